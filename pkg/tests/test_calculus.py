import pytest

from helpers import p4, random_fixture, random_sequence_fixture
from type_laws import Suite
from twinfo.calculus import (TypeCalculus, enumerate_types, join_table, promote_table, trim_table,
                             warp_function)
from twinfo.errors import PreconditionError
from twinfo.graph import Graph
from twinfo.regions import compute_relevant_regions
from twinfo.sequence import build_sequence
from twinfo.trigraph import Trigraph


@pytest.fixture
def p4calc():
    g, cs = p4()
    return TypeCalculus(g, cs, 2)


def edgeless(n=5):
    g = Graph.from_edges(n, [])
    return g, build_sequence(g, [(1, 2)] + [(n + t - 2, t) for t in range(3, n + 1)])


def test_enumerate_types_examples(p4calc):
    assert len(enumerate_types(p4calc, (1,), 1, 0)) == 1
    # at time 3 the parts are 6 = {1,2} and 5 = {3,4}
    assert len(enumerate_types(p4calc, (6,), 3, 1)) == 2
    g, cs = edgeless()
    calc = TypeCalculus(g, cs, 2)
    for s in range(1, g.n + 1):
        for k in range(3):
            part = calc.ti.part_at(1, s)
            assert len(enumerate_types(calc, (part,), s, k)) == 1


def test_enumerate_types_respects_bound(p4calc):
    uni = enumerate_types(p4calc, (6, 5), 3, 1)
    assert 0 < len(uni) <= uni.abstract_bound


def test_enumerate_types_vicinity_check(p4calc):
    small = Trigraph([6], {})
    with pytest.raises(PreconditionError):
        enumerate_types(p4calc, (6,), 3, 1, vic=small)


def test_trim_table_edgeless_constant():
    g, cs = edgeless()
    calc = TypeCalculus(g, cs, 2)
    dom = calc.universe(1, 1, 2)
    table = trim_table(calc, (1,), 1, 2, dom)
    assert len(set(table.values())) == 1


def test_join_requires_distance(p4calc):
    g, cs = p4()
    o = p4calc.oracle(3)
    a, b = o.ltp((1,), 1), o.ltp((3,), 1)
    with pytest.raises(PreconditionError):
        join_table(p4calc, (6,), (5,), 3, 1, [a], [b])


def test_join_at_time_one(p4calc):
    o = p4calc.oracle(1)
    a, b = o.ltp((1,), 1), o.ltp((2,), 1)
    assert join_table(p4calc, (1,), (2,), 1, 1, [a], [b])[(a, b)] == o.ltp((1, 2), 1)


def test_join_edgeless_unique_output():
    g, cs = edgeless(4)
    calc = TypeCalculus(g, cs, 1)
    o = calc.oracle(1)
    out = {join_table(calc, (u,), (v,), 1, 1, [o.ltp((u,), 1)], [o.ltp((v,), 1)])[(o.ltp((u,), 1), o.ltp((v,), 1))]
           for u in (1, 2) for v in (3, 4)}
    assert len({calc.arena.atomic(t) for t in out}) == 1


def test_promote_identity_outside_region():
    g, cs = random_fixture(7, nmin=8)
    calc = TypeCalculus(g, cs, 1)
    for k in range(2):
        regions = compute_relevant_regions(g, cs, 2 ** k)
        for reg in regions:
            s = reg.s
            o = calc.oracle(s)
            for p in o.parts:
                if p in reg.parts:
                    continue
                dom = calc.universe(p, s, k)
                assert promote_table(calc, (p,), s, k, dom) == {t: t for t in dom}


def test_promote_rank_zero_relabels(p4calc):
    o = p4calc.oracle(2)
    tau = o.ltp((3, 4), 0)
    out = promote_table(p4calc, (5, 5), 2, 0, [tau])[tau]
    assert p4calc.arena.parts(out) == (5, 5)
    assert p4calc.arena.atomic(out) == p4calc.arena.atomic(tau)


def test_promote_p4_example(p4calc):
    o2, o3 = p4calc.oracle(2), p4calc.oracle(3)
    for v in (3, 4):
        tau = o2.ltp((v,), 1)
        assert promote_table(p4calc, (5,), 2, 1, [tau])[tau] == o3.ltp((v,), 1)


def test_promote_region_coverage(p4calc):
    o = p4calc.oracle(2)
    tau = o.ltp((1,), 1)
    with pytest.raises(PreconditionError):
        promote_table(p4calc, (1,), 2, 1, [tau], region=Trigraph([5], {}))


def test_warp_identity_and_p4(p4calc):
    o1, o4 = p4calc.oracle(1), p4calc.oracle(4)
    tau = o1.ltp((1,), 1)
    assert warp_function(p4calc, (1,), 2, 2, 1, [tau]) == {tau: tau}
    assert warp_function(p4calc, (1,), 1, 4, 1, [tau])[tau] == o4.ltp((1,), 1)


def test_width(p4calc):
    assert p4calc.width() == 1


@pytest.mark.parametrize("seed", range(6))
def test_type_laws_greedy(seed):
    g, cs = random_fixture(seed, nmax=7)
    Suite(g, cs, kmax=2, pair_kmax=1).run()


@pytest.mark.parametrize("seed", range(6))
def test_type_laws_random_sequences(seed):
    g, cs = random_sequence_fixture(seed, nmax=7)
    Suite(g, cs, kmax=2, pair_kmax=1).run()


def test_scan_keeps_untouched_universes():
    g, cs = random_fixture(11, nmin=8)
    calc = TypeCalculus(g, cs, 1)
    for t in range(2, g.n + 1):
        st = cs.step(t)
        for k in range(2):
            near = calc.ti.ball((st.b,), t, 2 ** k)
            for p in calc.oracle(t).parts:
                if p not in near:
                    assert calc.universe(p, t, k) is calc.universe(p, t - 1, k)
