"""Shared fixtures, formula pools and hypothesis strategies."""
from __future__ import annotations

import random

from hypothesis import strategies as st

from twinfo.families import greedy_contraction_sequence, random_graph
from twinfo.graph import Graph, parse_graph
from twinfo.sequence import build_sequence, parse_contraction_sequence

P4_GR = "4 3\n1 2\n2 3\n3 4\n"
P4_CS = "3 4 5 1\n2 C N\n1 2 6 1\n5 N I\n6 5 7 0\n"


def p4():
    g = parse_graph(P4_GR)
    return g, parse_contraction_sequence(P4_CS, g)


def random_fixture(seed: int, nmax: int = 8, nmin: int = 1):
    rng = random.Random(seed)
    n = rng.randint(nmin, nmax)
    g = random_graph(n, rng.choice((0.25, 0.4, 0.6)), seed)
    return g, greedy_contraction_sequence(g)


def random_merges(n: int, rng: random.Random) -> list[tuple[int, int]]:
    alive = list(range(1, n + 1))
    merges = []
    for t in range(2, n + 1):
        a, a2 = rng.sample(alive, 2)
        alive.remove(a)
        alive.remove(a2)
        alive.append(n + t - 1)
        merges.append((a, a2))
    return merges


def random_sequence_fixture(seed: int, nmax: int = 8, nmin: int = 1):
    """Random graph with a uniformly random (usually wide) merge order."""
    rng = random.Random(seed)
    n = rng.randint(nmin, nmax)
    g = random_graph(n, rng.choice((0.25, 0.4, 0.6)), seed)
    return g, build_sequence(g, random_merges(n, rng))


@st.composite
def graph_and_sequence(draw, nmax: int = 8, nmin: int = 1):
    n = draw(st.integers(nmin, nmax))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    edges = [e for e in pairs if draw(st.booleans())]
    g = Graph.from_edges(n, edges)
    seed = draw(st.integers(0, 2 ** 32 - 1))
    return g, build_sequence(g, random_merges(n, random.Random(seed)))


SENTENCES = [
    "exists x exists y (E x y)",
    "exists x forall y (not E x y)",
    "forall x exists y (E x y)",
    "forall x forall y (x = y or E x y)",
    "exists x exists y (not x = y and not E x y)",
    "exists x exists y exists z (E x y and E y z and E x z)",
    "forall x exists y exists z (not y = z and E x y and E x z)",
    "exists x forall y (x = y or E x y)",
    "forall x forall y (E x y or exists z (E x z and E z y) or x = y)",
    "exists x exists y exists z (E x y and E y z and not E x z and not x = z)",
    "forall x (exists y (E x y) or forall y (x = y or not E x y))",
    "exists x (forall y (not E x y) and exists z (not x = z))",
    "not exists x exists y (not x = y)",
    "exists x forall y forall z ((E x y and E x z) or y = z or not E y z)",
]

QUERIES = [
    "E x y",
    "x = y",
    "not E x y and not x = y",
    "exists z (E x z and E z y)",
    "exists y (E x y)",
    "forall y (E x y or x = y)",
    "exists z (E x z and not E y z)",
    "exists y exists z (not y = z and E x y and E x z)",
    "forall z (E x z or not E y z)",
    "E x y or exists z (E x z and E y z)",
]
