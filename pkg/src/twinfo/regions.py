"""Relevant regions around every contraction, computed in one forward pass.

For time t the affected region is the ball of radius p around the new part
in the impurity graph.  Impure pairs inside it are known at once.  A pure
pair (X, Y) is only resolved later: it waits in a pending list attached to
the pair of current parts containing X and Y, until those two parts are
merged together or one of them is merged into a part impure to the other.
At that moment the contraction record (or, for the two merged parts
themselves, the graph) tells whether the pair is complete or anti-complete.
"""
from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph
from .sequence import ContractionSequence, Rel
from .trigraph import ImpurityState, Trigraph


@dataclass(frozen=True)
class RelevantRegion:
    s: int
    trigraph: Trigraph

    @property
    def parts(self) -> tuple[int, ...]:
        return self.trigraph.parts


def _key(x: int, y: int) -> tuple[int, int]:
    return (x, y) if x < y else (y, x)


class _Pending:
    def __init__(self) -> None:
        self.lists: dict[tuple[int, int], list[tuple[int, int, int]]] = {}
        self.partners: dict[int, set[int]] = {}

    def add(self, x: int, y: int, item: tuple[int, int, int]) -> None:
        self.extend(x, y, [item])

    def extend(self, x: int, y: int, items: list) -> None:
        k = _key(x, y)
        cur = self.lists.get(k)
        if cur is None:
            self.lists[k] = items
            self.partners.setdefault(x, set()).add(y)
            self.partners.setdefault(y, set()).add(x)
        elif len(cur) >= len(items):
            cur.extend(items)
        else:
            items.extend(cur)
            self.lists[k] = items

    def pop(self, x: int, y: int) -> list | None:
        items = self.lists.pop(_key(x, y), None)
        if items is not None:
            self.partners[x].discard(y)
            self.partners[y].discard(x)
        return items


def compute_relevant_regions(g: Graph, cs: ContractionSequence, p: int) -> list[RelevantRegion]:
    """Relevant region for every s in 1..n-1 (list index s-1)."""
    n = g.n
    state = ImpurityState(g, cs)
    pending = _Pending()
    balls: dict[int, dict[int, int]] = {}
    rels: dict[int, dict[tuple[int, int], Rel]] = {}
    merged_rel: dict[int, Rel] = {}

    def resolve(items, rel: Rel) -> None:
        if rel is Rel.IMPURE:
            raise AssertionError("a pending pair cannot be impure")
        for x, y, t in items:
            rels[t][_key(x, y)] = rel

    for t in range(2, n + 1):
        st = cs.step(t)
        a, a2, b = st.a, st.a2, st.b
        merged_rel[t] = state.rel(a, a2)
        items = pending.pop(a, a2)
        if items:
            resolve(items, merged_rel[t])
        for c, ra, ra2 in st.impure:
            for x, r in ((a, ra), (a2, ra2)):
                items = pending.pop(x, c)
                if items:
                    resolve(items, r)
        for x in (a, a2):
            for d in sorted(pending.partners.get(x, ())):
                items = pending.pop(x, d)
                pending.extend(b, d, items)
            pending.partners.pop(x, None)
        state.advance()
        ball = state.ball([b], p)
        balls[t] = ball
        rel: dict[tuple[int, int], Rel] = {}
        parts = sorted(ball)
        for i, x in enumerate(parts):
            nb = state.impgraph[x]
            for y in parts[i + 1:]:
                if y in nb:
                    rel[(x, y)] = Rel.IMPURE
                else:
                    pending.add(x, y, (x, y, t))
        rels[t] = rel
    if pending.lists:
        raise AssertionError("unresolved pairs after the last contraction")

    regions = []
    for s in range(1, n):
        t = s + 1
        st = cs.step(t)
        a, a2, b = st.a, st.a2, st.b
        survivors = sorted(c for c in balls[t] if c != b)
        ann = {c: (ra, ra2) for c, ra, ra2 in st.impure}
        rel = {_key(a, a2): merged_rel[t]}
        for c in survivors:
            if c in ann:
                rel[_key(a, c)], rel[_key(a2, c)] = ann[c]
            else:
                pure = rels[t][_key(b, c)]
                rel[_key(a, c)] = rel[_key(a2, c)] = pure
        for i, x in enumerate(survivors):
            for y in survivors[i + 1:]:
                rel[(x, y)] = rels[t][(x, y)]
        regions.append(RelevantRegion(s, Trigraph([a, a2] + survivors, rel)))
    return regions
