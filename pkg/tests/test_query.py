import itertools

import pytest

from helpers import QUERIES, p4, random_fixture, random_sequence_fixture
from twinfo.calculus import TypeCalculus
from twinfo.closetree import PathProductIndex, build_close_tree
from twinfo.errors import PreconditionError
from twinfo.logic import naive_eval, parse_formula
from twinfo.proximity import (RangeIndex, Rect, brute_first_close, build_firstclose_rectangles,
                              first_close)
from twinfo.query import QueryEngine, answer, build_query_engine
from twinfo.sequence import reindex_convex


def check_partition(n, rects):
    cover = {}
    for rc in rects:
        for x in range(rc.x1, rc.x2 + 1):
            for y in range(rc.y1, rc.y2 + 1):
                assert (x, y) not in cover
                cover[(x, y)] = rc.t
    assert len(cover) == n * n
    return cover


@pytest.mark.parametrize("seed", range(15))
@pytest.mark.parametrize("r", [0, 1, 2, 4])
def test_first_close_matches_brute_force(seed, r):
    g, cs = random_sequence_fixture(seed, nmax=12)
    g, cs, _ = reindex_convex(g, cs)
    rects = build_firstclose_rectangles(g, cs, r)
    cover = check_partition(g.n, rects)
    idx = RangeIndex(g.n, rects)
    brute = brute_first_close(g, cs, r)
    for (u, v), t in brute.items():
        assert cover[(u, v)] == t
        assert first_close(idx, u, v) == t


def test_first_close_diagonal_and_range():
    g, cs = p4()
    idx = RangeIndex(g.n, build_firstclose_rectangles(g, cs, 1))
    assert all(first_close(idx, v, v) == 1 for v in g.vertices())
    assert all(1 < first_close(idx, u, v) <= g.n for u in g.vertices() for v in g.vertices() if u != v)


def test_range_index_locates_rectangles():
    rects = [Rect(1, 2, 1, 3, 5), Rect(3, 3, 1, 3, 7)]
    idx = RangeIndex(3, rects)
    assert idx.query(2, 3) == 5 and idx.query(3, 1) == 7
    assert idx.locate(1, 1) == rects[0]


def reference_types(calc, t, tuples, k):
    o = calc.oracle(t)
    return {o.ltp(w, k) for w in tuples}


@pytest.mark.parametrize("seed", range(10))
def test_close_tree_universes_and_warps(seed):
    g, cs = random_fixture(seed, nmax=7)
    g, cs, _ = reindex_convex(g, cs)
    for k, m in ((0, 1), (0, 2), (1, 1), (1, 2)):
        calc = TypeCalculus(g, cs, k - 1)
        tree = build_close_tree(calc, k, m)
        idx = PathProductIndex(tree)
        ti = calc.ti
        for nid, (u, s) in enumerate(tree.keys):
            pools = [sorted(ti.members(p)) for p in u]
            o = calc.oracle(s)
            tuples = [w for w in itertools.product(*pools)]
            assert tree.universe[nid] <= {o.ltp(w, k) for w in tuples}
            root_o = calc.oracle(g.n)
            for w in tuples:
                tau = o.ltp(w, k)
                if tau in tree.universe[nid]:
                    assert idx.warp(nid, tree.root, tau) == root_o.ltp(w, k)


def test_engine_p4_examples():
    g, cs = p4()
    eng = build_query_engine(g, cs, parse_formula("E x y"))
    assert answer(eng, {"x": 2, "y": 3})
    assert not eng.answer((1, 3))
    eng = QueryEngine(g, cs, parse_formula("exists y exists z (not y = z and E x y and E x z)"))
    assert [eng.answer((v,)) for v in g.vertices()] == [False, True, True, False]


def test_engine_input_errors():
    g, cs = p4()
    eng = QueryEngine(g, cs, parse_formula("E x y"))
    with pytest.raises(PreconditionError):
        eng.answer((1,))
    with pytest.raises(PreconditionError):
        eng.answer((1, 9))
    with pytest.raises(PreconditionError):
        eng.answer({"x": 1, "z": 2})
    with pytest.raises(PreconditionError):
        QueryEngine(g, cs, parse_formula("exists x (E x x)"))


@pytest.mark.parametrize("seed", range(12))
def test_engine_matches_naive(seed):
    g, cs = random_sequence_fixture(seed, nmax=7)
    for s in QUERIES:
        phi = parse_formula(s)
        eng = QueryEngine(g, cs, phi)
        xs = eng.variables
        for w in itertools.product(g.vertices(), repeat=len(xs)):
            assert eng.answer(w) == naive_eval(g, phi, dict(zip(xs, w))), (s, w)


def test_engine_three_variables():
    g, cs = random_fixture(5, nmin=6, nmax=6)
    phi = parse_formula("E x y and E y z and not x = z")
    eng = QueryEngine(g, cs, phi)
    for w in itertools.product(g.vertices(), repeat=3):
        assert eng.answer(w) == naive_eval(g, phi, dict(zip("xyz", w)))
