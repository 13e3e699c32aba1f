"""Graph families with contraction sequences, for tests and benchmarks."""
from __future__ import annotations

import math
import random

from .graph import Graph
from .sequence import ContractionSequence, _Replay, build_sequence


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(1, n)))


def sweep_sequence(g: Graph) -> ContractionSequence:
    """Absorb vertices left to right: width 1 on paths."""
    n = g.n
    merges = []
    cur = 1
    for v in range(2, n + 1):
        merges.append((cur, v))
        cur = n + v - 1
    return build_sequence(g, merges)


def grid_graph(n: int) -> Graph:
    """n vertices laid out row-major in rows of length floor(sqrt(n))."""
    w = max(1, math.isqrt(n))
    edges = []
    for v in range(1, n + 1):
        if v % w != 0 and v + 1 <= n:
            edges.append((v, v + 1))
        if v + w <= n:
            edges.append((v, v + w))
    return Graph.from_edges(n, edges)


def random_graph(n: int, p: float = 0.4, seed: int = 0) -> Graph:
    rng = random.Random(seed)
    return Graph.from_edges(n, ((u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)
                                if rng.random() < p))


def greedy_contraction_sequence(g: Graph) -> ContractionSequence:
    """Repeatedly merge the pair minimising the resulting maximum impurity
    degree; ties go to the lexicographically smallest pair of part ids."""
    n = g.n
    rp = _Replay(g)
    merges = []
    for t in range(2, n + 1):
        b = n + t - 1
        parts = sorted(rp.size)
        best = None
        for i, a in enumerate(parts):
            for a2 in parts[i + 1:]:
                score = _score(rp, a, a2)
                if best is None or score < best[0]:
                    best = (score, a, a2)
        _, a, a2 = best
        merges.append((a, a2))
        rp.merge(a, a2, b)
    return build_sequence(g, merges)


def _score(rp: _Replay, a: int, a2: int) -> int:
    size_b = rp.size[a] + rp.size[a2]
    cnt: dict[int, int] = dict(rp.cnt[a])
    for q, c in rp.cnt[a2].items():
        cnt[q] = cnt.get(q, 0) + c
    cnt.pop(a, None)
    cnt.pop(a2, None)
    new_imp = {q for q, c in cnt.items() if c != size_b * rp.size[q]}
    worst = len(new_imp)
    for q, nb in rp.imp.items():
        if q in (a, a2):
            continue
        deg = len(nb - {a, a2}) + (1 if q in new_imp else 0)
        worst = max(worst, deg)
    return worst


path_sequence = sweep_sequence


def edgeless_graph(n: int) -> Graph:
    return Graph.from_edges(n, ())


FAMILIES = ("path", "grid", "edgeless", "random")


def make_family(name: str, n: int, seed: int = 0) -> tuple[Graph, ContractionSequence]:
    if name == "path":
        g = path_graph(n)
        return g, path_sequence(g)
    if name == "grid":
        g = grid_graph(n)
        return g, sweep_sequence(g)
    if name == "edgeless":
        g = edgeless_graph(n)
        return g, sweep_sequence(g)
    if name == "random":
        if n > 12:
            raise ValueError("random family is capped at n <= 12")
        g = random_graph(n, seed=seed)
        return g, greedy_contraction_sequence(g)
    raise ValueError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")

