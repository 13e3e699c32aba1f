"""Trigraphs, quotients G/P and the impurity-graph scan cursor."""
from __future__ import annotations

from collections import deque
from typing import Iterable, Mapping

from .graph import Graph
from .sequence import ContractionSequence, Rel

INF = float("inf")


class Trigraph:
    """Parts with a symmetric three-valued relation on distinct pairs."""

    __slots__ = ("parts", "_rel")

    def __init__(self, parts: Iterable[int], rel: Mapping[tuple[int, int], Rel]):
        self.parts = tuple(sorted(parts))
        self._rel = {(min(p, q), max(p, q)): r for (p, q), r in rel.items()}

    def rel(self, p: int, q: int) -> Rel:
        if p == q:
            raise ValueError("relation is only defined on distinct parts")
        return self._rel[(p, q) if p < q else (q, p)]

    def impure_pairs(self) -> list[tuple[int, int]]:
        return sorted(k for k, r in self._rel.items() if r is Rel.IMPURE)

    def relations(self) -> dict[tuple[int, int], Rel]:
        return dict(self._rel)

    def __contains__(self, p: int) -> bool:
        return p in set(self.parts)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Trigraph):
            return NotImplemented
        return self.parts == other.parts and self._rel == other._rel

    def __repr__(self) -> str:
        body = ", ".join(f"{p}-{q}:{r.value}" for (p, q), r in sorted(self._rel.items()))
        return f"Trigraph({list(self.parts)}; {body})"


def _as_partition(partition) -> dict[int, frozenset[int]]:
    if isinstance(partition, Mapping):
        return {int(k): frozenset(v) for k, v in partition.items()}
    out = {}
    for i, part in enumerate(partition, start=1):
        pid = getattr(part, "id", i)
        members = getattr(part, "members", part)
        out[pid] = frozenset(members)
    return out


def quotient_trigraph(g: Graph, partition) -> Trigraph:
    """G/P for a partition given as {id: vertices} or a list of vertex sets."""
    parts = _as_partition(partition)
    seen: set[int] = set()
    for pid, mem in parts.items():
        if not mem:
            raise ValueError(f"part {pid} is empty")
        if seen & mem:
            raise ValueError("parts overlap")
        seen |= mem
    if seen != set(g.vertices()):
        raise ValueError("parts do not cover the vertex set")
    ids = sorted(parts)
    rel = {}
    for i, p in enumerate(ids):
        for q in ids[i + 1:]:
            e = sum(1 for u in parts[p] for v in parts[q] if g.has_edge(u, v))
            full = len(parts[p]) * len(parts[q])
            rel[(p, q)] = Rel.ANTI if e == 0 else Rel.COMPLETE if e == full else Rel.IMPURE
    return Trigraph(ids, rel)


def bfs(neighbors, sources: Iterable[int], radius: float = INF) -> dict[int, int]:
    """Distances from the source set, explored up to the given radius."""
    dist = {s: 0 for s in sources}
    queue = deque(dist)
    while queue:
        p = queue.popleft()
        d = dist[p]
        if d >= radius:
            continue
        for q in neighbors(p):
            if q not in dist:
                dist[q] = d + 1
                queue.append(q)
    return dist


class ImpurityState:
    """Single-owner cursor over Imp(G/P_t), advanced one contraction at a time.

    The impurity lists of the (validated) sequence drive the updates; pure
    relations are read from any pair of representatives.
    """

    def __init__(self, g: Graph, cs: ContractionSequence):
        self.g = g
        self.cs = cs
        self.t = 1
        self.parts: set[int] = set(g.vertices())
        self.impgraph: dict[int, set[int]] = {v: set() for v in g.vertices()}
        self.rep: dict[int, int] = {v: v for v in g.vertices()}

    def advance(self) -> None:
        st = self.cs.step(self.t + 1)
        a, a2, b = st.a, st.a2, st.b
        for p in (a, a2):
            for q in self.impgraph.pop(p):
                if q in self.impgraph:
                    self.impgraph[q].discard(p)
            self.parts.discard(p)
        self.parts.add(b)
        self.impgraph[b] = set(st.impure_parts)
        for c in st.impure_parts:
            self.impgraph[c].add(b)
        self.rep[b] = self.rep[a]
        self.t += 1

    def neighbors(self, p: int) -> set[int]:
        return self.impgraph[p]

    def ball(self, sources: Iterable[int], radius: float) -> dict[int, int]:
        sources = list(sources)
        for p in sources:
            if p not in self.parts:
                raise KeyError(f"part {p} is not alive at time {self.t}")
        return bfs(self.impgraph.__getitem__, sources, radius)

    def dist(self, p: int, q: int) -> float:
        return self.ball([p], INF).get(q, INF)

    def rel(self, p: int, q: int) -> Rel:
        if q in self.impgraph[p]:
            return Rel.IMPURE
        return Rel.COMPLETE if self.g.has_edge(self.rep[p], self.rep[q]) else Rel.ANTI

    def induced(self, parts: Iterable[int]) -> Trigraph:
        ps = sorted(parts)
        rel = {(p, q): self.rel(p, q) for i, p in enumerate(ps) for q in ps[i + 1:]}
        return Trigraph(ps, rel)


def vicinity(state: ImpurityState, f: Iterable[int], r: float) -> Trigraph:
    """Trigraph induced on the parts within impurity distance r of f."""
    return state.induced(state.ball(f, r))
