import itertools

import pytest
from hypothesis import given, settings, strategies as st

from helpers import SENTENCES, p4
from twinfo.errors import ParseError
from twinfo.graph import Graph
from twinfo.logic import (And, Edge, Eq, Exists, Forall, Not, Or, naive_eval,
                          naive_satisfying_set, parse_formula, sort_vars)


def test_parse_examples():
    phi = parse_formula("E x y")
    assert phi == Edge("x", "y") and phi.rank() == 0 and phi.free() == {"x", "y"}
    phi = parse_formula("exists y (E x y)")
    assert phi.rank() == 1 and phi.free() == {"x"}
    phi = parse_formula("forall x exists y (E x y)")
    assert phi.rank() == 2 and phi.free() == set()


def test_precedence_and_scope():
    phi = parse_formula("not E x y and x = y or E y x")
    assert isinstance(phi, Or)
    assert isinstance(phi.parts[0], And)
    assert isinstance(phi.parts[0].parts[0], Not)
    phi = parse_formula("exists z E x z and E z y")
    assert isinstance(phi, Exists) and phi.free() == {"x", "y"}


def test_syntax_errors():
    for bad in ["E x", "exists (E x y)", "x = ", "(E x y", "E x y)", "foo x y", ""]:
        with pytest.raises(ParseError):
            parse_formula(bad)


def test_parse_print_roundtrip():
    for s in SENTENCES:
        phi = parse_formula(s)
        assert parse_formula(str(phi)) == phi


def test_variable_order_is_natural():
    assert sort_vars(["y", "x10", "x2", "x"]) == ("x", "x2", "x10", "y")


def test_naive_eval_examples():
    g, _ = p4()
    assert naive_eval(g, parse_formula("E x y"), {"x": 2, "y": 3})
    assert naive_eval(g, parse_formula("exists y (E x y)"), {"x": 1})
    assert not naive_eval(g, parse_formula("exists x forall y (not E x y)"), {})


def test_naive_eval_missing_variable():
    g, _ = p4()
    with pytest.raises(KeyError):
        naive_eval(g, parse_formula("E x y"), {"x": 1})


def test_satisfying_set_examples():
    g, _ = p4()
    assert naive_satisfying_set(g, parse_formula("E x y")) == {
        (1, 2), (2, 1), (2, 3), (3, 2), (3, 4), (4, 3)}
    assert naive_satisfying_set(g, parse_formula("x = x")) == {(1,), (2,), (3,), (4,)}
    assert naive_satisfying_set(Graph.from_edges(2, []), parse_formula("E x y")) == set()


def test_rank_laws():
    a = parse_formula("exists y (E x y)")
    b = parse_formula("forall y forall z (E y z)")
    assert Not(a).rank() == a.rank()
    assert And((a, b)).rank() == max(a.rank(), b.rank())
    assert Exists("w", b).rank() == 1 + b.rank()


@st.composite
def small_graph(draw):
    n = draw(st.integers(1, 5))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    return Graph.from_edges(n, [e for e in pairs if draw(st.booleans())])


@settings(max_examples=40, deadline=None)
@given(small_graph(), st.sampled_from(SENTENCES), st.permutations(range(5)))
def test_sentences_invariant_under_isomorphism(g, s, perm):
    phi = parse_formula(s)
    eta = {v: perm[v - 1] + 1 for v in g.vertices()}
    order = sorted(eta.values())
    eta = {v: order.index(eta[v]) + 1 for v in g.vertices()}
    assert naive_eval(g, phi, {}) == naive_eval(g.relabel(eta), phi, {})


def rename(phi, m):
    if isinstance(phi, Eq):
        return Eq(m.get(phi.x, phi.x), m.get(phi.y, phi.y))
    if isinstance(phi, Edge):
        return Edge(m.get(phi.x, phi.x), m.get(phi.y, phi.y))
    if isinstance(phi, Not):
        return Not(rename(phi.body, m))
    if isinstance(phi, (And, Or)):
        return type(phi)(tuple(rename(p, m) for p in phi.parts))
    return type(phi)(m.get(phi.var, phi.var), rename(phi.body, m))


@settings(max_examples=40, deadline=None)
@given(small_graph(), st.sampled_from(SENTENCES))
def test_renaming_bound_variables(g, s):
    phi = parse_formula(s)
    renamed = rename(phi, {"x": "u9", "y": "v9", "z": "w9"})
    assert naive_eval(g, phi, {}) == naive_eval(g, renamed, {})
