import itertools

import pytest

from helpers import SENTENCES, p4, random_fixture, random_sequence_fixture
from twinfo.calculus import TypeCalculus
from twinfo.errors import PreconditionError
from twinfo.graph import Graph
from twinfo.logic import naive_eval, parse_formula
from twinfo.modelcheck import ModelChecker, interpret, model_check
from twinfo.sequence import build_sequence, validate


def test_p4_examples():
    g, cs = p4()
    assert model_check(g, cs, parse_formula("exists x exists y (E x y)"))
    assert not model_check(g, cs, parse_formula("exists x forall y (not E x y)"))


def test_edgeless_triangle():
    g = Graph.from_edges(3, [])
    cs = build_sequence(g, [(2, 3), (1, 4)])
    assert model_check(g, cs, parse_formula("forall x forall y (x = y or not E x y)"))


def test_single_vertex():
    g = Graph.from_edges(1, [])
    cs = build_sequence(g, [])
    assert model_check(g, cs, parse_formula("forall x forall y (x = y)"))
    assert not model_check(g, cs, parse_formula("exists x exists y (not x = y)"))


def test_rejects_free_variables():
    g, cs = p4()
    with pytest.raises(PreconditionError):
        model_check(g, cs, parse_formula("E x y"))


@pytest.mark.parametrize("seed", range(20))
def test_matches_naive(seed):
    g, cs = (random_fixture if seed % 2 else random_sequence_fixture)(seed, nmax=8)
    mc = ModelChecker(g, cs, 3)
    for s in SENTENCES:
        phi = parse_formula(s)
        assert mc.check(phi) == naive_eval(g, phi, {}), s


def test_checker_raises_rank_on_demand():
    g, cs = p4()
    mc = ModelChecker(g, cs, 1)
    assert mc.check(parse_formula("forall x exists y exists z (not y = z and (E x y or E x z))")) == \
        naive_eval(g, parse_formula("forall x exists y exists z (not y = z and (E x y or E x z))"), {})
    assert mc.calc.K >= 2


def test_scan_touches_only_near_parts():
    g, cs = random_fixture(4, nmin=8)
    calc = TypeCalculus(g, cs, 2)
    bound = 0
    for t in range(2, g.n + 1):
        bound += sum(len(calc.ti.ball((cs.step(t).b,), t, 2 ** k)) for k in range(3))
    assert calc.updates <= bound


def brute_interpretation(g, phi):
    xs = phi.free_vars
    return {(u, v) for u in g.vertices() for v in g.vertices() if u < v
            and naive_eval(g, phi, {xs[0]: u, xs[1]: v}) and naive_eval(g, phi, {xs[0]: v, xs[1]: u})}


def test_interpret_identity():
    g, cs = random_fixture(2, nmin=7)
    h, cs2 = interpret(g, cs, parse_formula("E x y"))
    assert h == g
    validate(h, cs2)


def test_interpret_complete_graph():
    g, cs = random_fixture(9, nmin=6)
    h, cs2 = interpret(g, cs, parse_formula("not x = y"))
    assert h.m == g.n * (g.n - 1) // 2
    assert validate(h, cs2) == 0


def test_interpret_square_of_p4():
    g, cs = p4()
    phi = parse_formula("exists z (E x z and E z y)")
    h, cs2 = interpret(g, cs, phi)
    assert set(h.edges()) == brute_interpretation(g, phi)
    validate(h, cs2)


def test_interpret_arity_check():
    g, cs = p4()
    with pytest.raises(PreconditionError):
        interpret(g, cs, parse_formula("exists y (E x y)"))


@pytest.mark.parametrize("seed", range(12))
def test_interpret_matches_brute_force(seed):
    g, cs = random_sequence_fixture(seed, nmax=8)
    for s in ("E x y", "exists z (E x z and E z y)", "not E x y", "exists z (E x z and not E y z)"):
        phi = parse_formula(s)
        h, cs2 = interpret(g, cs, phi)
        assert set(h.edges()) == brute_interpretation(g, phi)
        validate(h, cs2)
