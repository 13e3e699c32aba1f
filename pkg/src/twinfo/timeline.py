"""Persistent view of a contraction sequence: every time is queryable.

Impurity neighbourhoods are stored as per-part histories (time of change,
frozen neighbour set), so BFS at any time t costs a bisect per visited part.
"""
from __future__ import annotations

from bisect import bisect_right
from collections import deque
from typing import Iterable

from .graph import Graph
from .sequence import ContractionSequence, Rel, creation_time

INF = float("inf")


class History:
    """Piecewise-constant value over time, keyed per part."""

    __slots__ = ("times", "values")

    def __init__(self) -> None:
        self.times: dict[int, list[int]] = {}
        self.values: dict[int, list] = {}

    def set(self, key: int, t: int, value) -> None:
        ts = self.times.get(key)
        if ts is None:
            self.times[key] = [t]
            self.values[key] = [value]
        elif ts[-1] == t:
            self.values[key][-1] = value
        else:
            ts.append(t)
            self.values[key].append(value)

    def get(self, key: int, t: int):
        ts = self.times[key]
        if ts[-1] <= t:
            return self.values[key][-1]
        return self.values[key][bisect_right(ts, t) - 1]


class TimeIndex:
    def __init__(self, g: Graph, cs: ContractionSequence):
        self.g = g
        self.cs = cs
        self.n = n = g.n
        self.tree = cs.tree
        self.rep = [0] * (2 * n)
        for v in range(1, n + 1):
            self.rep[v] = v
        self.imp = History()
        empty: frozenset[int] = frozenset()
        for v in range(1, n + 1):
            self.imp.set(v, 1, empty)
        cur: dict[int, frozenset[int]] = {v: empty for v in range(1, n + 1)}
        for t in range(2, n + 1):
            st = cs.step(t)
            self.rep[st.b] = self.rep[st.a]
            nb = frozenset(st.impure_parts)
            cur.pop(st.a)
            cur.pop(st.a2)
            cur[st.b] = nb
            self.imp.set(st.b, t, nb)
            gone = (st.a, st.a2)
            for c in nb:
                s = (cur[c] - set(gone)) | {st.b}
                cur[c] = frozenset(s)
                self.imp.set(c, t, cur[c])
        self._balls: dict[tuple, dict[int, int]] = {}

    # -- structure ------------------------------------------------------
    def ctime(self, p: int) -> int:
        return creation_time(self.n, p)

    def step(self, t: int):
        return self.cs.step(t)

    def image(self, p: int, s: int) -> int:
        """The part of P_{s+1} containing part p of P_s."""
        st = self.cs.step(s + 1)
        return st.b if p == st.a or p == st.a2 else p

    def preimage(self, q: int, t: int) -> tuple[int, ...]:
        """Parts of P_{t-1} contained in part q of P_t."""
        st = self.cs.step(t)
        return (st.a, st.a2) if q == st.b else (q,)

    def part_at(self, v: int, t: int) -> int:
        return self.tree.part_at(v, t)

    def members(self, p: int) -> frozenset[int]:
        return self.tree.members(p)

    def root(self) -> int:
        return 2 * self.n - 1

    # -- impurity graph -------------------------------------------------
    def neighbors(self, p: int, t: int) -> frozenset[int]:
        return self.imp.get(p, t)

    def ball(self, sources: tuple[int, ...], t: int, radius: int) -> dict[int, int]:
        key = (sources, t, radius)
        got = self._balls.get(key)
        if got is not None:
            return got
        imp = self.imp
        dist = {s: 0 for s in sources}
        queue = deque(dist)
        while queue:
            p = queue.popleft()
            d = dist[p]
            if d >= radius:
                continue
            for q in imp.get(p, t):
                if q not in dist:
                    dist[q] = d + 1
                    queue.append(q)
        self._balls[key] = dist
        return dist

    def dist(self, p: int, q: int, t: int, radius: int) -> float:
        """dist_t(p, q) if at most radius, else INF."""
        if p == q:
            return 0
        return self.ball((p,), t, radius).get(q, INF)

    def rel(self, p: int, q: int, t: int) -> Rel:
        if q in self.imp.get(p, t):
            return Rel.IMPURE
        return Rel.COMPLETE if self.g.has_edge(self.rep[p], self.rep[q]) else Rel.ANTI

    def close(self, parts: tuple[int, ...], t: int, r: int) -> bool:
        """Whether the tuple is r-close at time t (its r-proximity graph is connected)."""
        m = len(parts)
        if m <= 1:
            return True
        seen = {0}
        stack = [0]
        while stack:
            i = stack.pop()
            ball = self.ball((parts[i],), t, r)
            for j in range(m):
                if j not in seen and parts[j] in ball:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == m

    def components(self, parts: tuple[int, ...], t: int, r: int) -> list[tuple[int, ...]]:
        """Positions grouped by the r-proximity graph, sorted by least position."""
        m = len(parts)
        comp = [-1] * m
        out = []
        for i in range(m):
            if comp[i] >= 0:
                continue
            comp[i] = len(out)
            group = [i]
            stack = [i]
            while stack:
                x = stack.pop()
                ball = self.ball((parts[x],), t, r)
                for j in range(m):
                    if comp[j] < 0 and parts[j] in ball:
                        comp[j] = comp[i]
                        group.append(j)
                        stack.append(j)
            out.append(tuple(sorted(group)))
        return out
