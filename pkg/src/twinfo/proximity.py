"""firstClose_r: the first time two vertices lie in parts at impurity
distance at most r.  Over a convex sequence the pairs sharing a value form
rectangles of intervals; a segment tree over x answers point queries."""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

from .graph import Graph
from .sequence import ContractionSequence, part_intervals
from .timeline import TimeIndex


@dataclass(frozen=True)
class Rect:
    x1: int
    x2: int
    y1: int
    y2: int
    t: int

    def __contains__(self, xy: tuple[int, int]) -> bool:
        x, y = xy
        return self.x1 <= x <= self.x2 and self.y1 <= y <= self.y2

    @property
    def area(self) -> int:
        return (self.x2 - self.x1 + 1) * (self.y2 - self.y1 + 1)


def build_firstclose_rectangles(g: Graph, cs: ContractionSequence, r: int,
                                index: TimeIndex | None = None) -> list[Rect]:
    """Rectangles with tags partitioning [n] x [n] (sequence must be convex)."""
    ti = index if index is not None else TimeIndex(g, cs)
    iv = part_intervals(cs)
    rects = [Rect(v, v, v, v, 1) for v in range(1, g.n + 1)]
    for t in range(2, g.n + 1):
        st = cs.step(t)
        b = st.b
        near_now = ti.ball((b,), t, r)
        cand = sorted([c for c in near_now if c != b] + [st.a, st.a2])
        for i, x in enumerate(cand):
            before = ti.ball((x,), t - 1, r)
            xi = b if x in (st.a, st.a2) else x
            now = ti.ball((xi,), t, r)
            for y in cand[i + 1:]:
                if y in before:
                    continue
                yi = b if y in (st.a, st.a2) else y
                if yi in now:
                    (x1, x2), (y1, y2) = iv[x], iv[y]
                    rects.append(Rect(x1, x2, y1, y2, t))
                    rects.append(Rect(y1, y2, x1, x2, t))
    return rects


class RangeIndex:
    """Point location among pairwise disjoint rectangles.

    Each rectangle is stored at the O(log n) segment-tree nodes covering its
    x-interval; at a node the stored y-intervals are disjoint, so a bisect
    finds the candidate.  Queries cost O(log^2 n).
    """

    def __init__(self, n: int, rects: list[Rect]):
        self.n = n
        size = 1
        while size < n:
            size *= 2
        self.size = size
        nodes: list[list[Rect]] = [[] for _ in range(2 * size)]
        for rc in rects:
            lo, hi = rc.x1 - 1 + size, rc.x2 - 1 + size + 1
            while lo < hi:
                if lo & 1:
                    nodes[lo].append(rc)
                    lo += 1
                if hi & 1:
                    hi -= 1
                    nodes[hi].append(rc)
                lo //= 2
                hi //= 2
        self._starts: list[list[int]] = []
        self._rects: list[list[Rect]] = []
        for lst in nodes:
            lst.sort(key=lambda rc: rc.y1)
            self._rects.append(lst)
            self._starts.append([rc.y1 for rc in lst])

    def locate(self, x: int, y: int) -> Rect:
        if not (1 <= x <= self.n and 1 <= y <= self.n):
            raise IndexError(f"point ({x}, {y}) outside [1, {self.n}]^2")
        i = x - 1 + self.size
        while i >= 1:
            starts = self._starts[i]
            if starts:
                j = bisect_right(starts, y) - 1
                if j >= 0:
                    rc = self._rects[i][j]
                    if y <= rc.y2:
                        return rc
            i //= 2
        raise LookupError(f"no rectangle covers ({x}, {y})")

    def query(self, x: int, y: int) -> int:
        return self.locate(x, y).t


def first_close(idx: RangeIndex, u: int, v: int) -> int:
    return idx.query(u, v)


def brute_first_close(g: Graph, cs: ContractionSequence, r: int) -> dict[tuple[int, int], int]:
    """Reference values for all ordered pairs by replaying every partition."""
    from .trigraph import ImpurityState

    n = g.n
    out: dict[tuple[int, int], int] = {}
    state = ImpurityState(g, cs)
    tree = cs.tree
    for t in range(1, n + 1):
        if t > 1:
            state.advance()
        part = {v: tree.part_at(v, t) for v in range(1, n + 1)}
        balls = {p: state.ball([p], r) for p in state.parts}
        for u in range(1, n + 1):
            for v in range(1, n + 1):
                if (u, v) not in out and part[v] in balls[part[u]]:
                    out[(u, v)] = t
    return out
