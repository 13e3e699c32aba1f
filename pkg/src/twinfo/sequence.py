"""Contraction sequences: representation, the .cs format, replay validation
and convex reindexing.

Part ids: singletons are 1..n, the part created at time t (2 <= t <= n) gets
id n + t - 1.  The record for time t names the two merged parts a, a2 of
P_{t-1}, the new part b, and every part c impure to b in P_t together with
the relations of c to a and to a2 in P_{t-1}.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ParseError, ValidationError
from .graph import Graph, _content_lines, _int


class Rel(enum.Enum):
    COMPLETE = "C"
    ANTI = "N"
    IMPURE = "I"


@dataclass(frozen=True)
class Step:
    a: int
    a2: int
    b: int
    impure: tuple[tuple[int, Rel, Rel], ...]

    @property
    def impure_parts(self) -> tuple[int, ...]:
        return tuple(c for c, _, _ in self.impure)


class ContractionSequence:
    """Steps for times 2..n; ``step(t)`` returns the record of time t."""

    __slots__ = ("n", "steps", "_tree")

    def __init__(self, n: int, steps: Sequence[Step]):
        if len(steps) != n - 1:
            raise ValueError(f"expected {n - 1} steps, got {len(steps)}")
        self.n = n
        self.steps = tuple(steps)
        self._tree: ContractionTree | None = None

    def step(self, t: int) -> Step:
        if not 2 <= t <= self.n:
            raise IndexError(f"no contraction at time {t}")
        return self.steps[t - 2]

    @property
    def tree(self) -> "ContractionTree":
        if self._tree is None:
            self._tree = ContractionTree(self)
        return self._tree

    @property
    def root(self) -> int:
        return 2 * self.n - 1

    def merges(self) -> list[tuple[int, int]]:
        return [(s.a, s.a2) for s in self.steps]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ContractionSequence):
            return NotImplemented
        return self.n == other.n and self.steps == other.steps

    def __repr__(self) -> str:
        return f"ContractionSequence(n={self.n})"


def creation_time(n: int, part: int) -> int:
    return 1 if part <= n else part - n + 1


class ContractionTree:
    """The rooted binary tree of all parts; leaves are the vertices."""

    def __init__(self, cs: ContractionSequence):
        n = cs.n
        self.n = n
        size = 2 * n
        self.parent = [0] * size
        self.children: list[tuple[int, int] | None] = [None] * size
        for st in cs.steps:
            self.parent[st.a] = st.b
            self.parent[st.a2] = st.b
            self.children[st.b] = (st.a, st.a2)
        self.root = 2 * n - 1
        self._members: dict[int, frozenset[int]] = {}
        self._lifting: list[list[int]] | None = None

    def ctime(self, part: int) -> int:
        return creation_time(self.n, part)

    def dtime(self, part: int) -> int | None:
        """Time at which the part is merged away (None for the root)."""
        p = self.parent[part]
        return None if p == 0 else self.ctime(p)

    def alive(self, part: int, t: int) -> bool:
        d = self.dtime(part)
        return self.ctime(part) <= t and (d is None or t < d)

    def members(self, part: int) -> frozenset[int]:
        got = self._members.get(part)
        if got is not None:
            return got
        out = []
        stack = [part]
        while stack:
            p = stack.pop()
            ch = self.children[p]
            if ch is None:
                out.append(p)
            else:
                stack.extend(ch)
        got = frozenset(out)
        self._members[part] = got
        return got

    def preorder_leaves(self) -> list[int]:
        order = []
        stack = [self.root]
        while stack:
            p = stack.pop()
            ch = self.children[p]
            if ch is None:
                order.append(p)
            else:
                stack.append(ch[1])
                stack.append(ch[0])
        return order

    def _build_lifting(self) -> list[list[int]]:
        size = 2 * self.n
        up = [p if p else i for i, p in enumerate(self.parent)]
        table = [up]
        span = 1
        while span < size:
            prev = table[-1]
            table.append([prev[prev[i]] for i in range(size)])
            span *= 2
        return table

    def part_at(self, v: int, t: int) -> int:
        """The part of P_t containing vertex v."""
        if self._lifting is None:
            self._lifting = self._build_lifting()
        n = self.n
        p = v
        for level in reversed(self._lifting):
            q = level[p]
            if q != p and creation_time(n, q) <= t:
                p = q
        return p

    def parts_at(self, t: int) -> list[int]:
        n = self.n
        cands = list(range(1, n + 1)) + list(range(n + 1, n + t))
        return [p for p in cands if self.alive(p, t)]


def partition_at(cs: ContractionSequence, t: int) -> dict[int, frozenset[int]]:
    """P_t as a map from part id to vertex set."""
    tree = cs.tree
    return {p: tree.members(p) for p in tree.parts_at(t)}


# --------------------------------------------------------------------- format

def parse_contraction_sequence(text: str | bytes, g: Graph) -> ContractionSequence:
    n = g.n
    lines = list(_content_lines(text))
    alive = set(range(1, n + 1))
    steps: list[Step] = []
    i = 0
    for t in range(2, n + 1):
        if i >= len(lines):
            last = lines[-1][0] if lines else 1
            raise ParseError(f"expected {n - 1} records, found {t - 2}", last)
        lineno, toks = lines[i]
        i += 1
        if len(toks) != 4:
            raise ParseError("record header must be 'A A' B k'", lineno)
        a, a2, b, k = (_int(x, lineno) for x in toks)
        for p in (a, a2):
            if p not in alive:
                raise ParseError(f"part {p} is not alive before time {t}", lineno)
        if a == a2:
            raise ParseError("a part cannot be merged with itself", lineno)
        if b != n + t - 1:
            raise ParseError(f"new part at time {t} must have id {n + t - 1}", lineno)
        if k < 0:
            raise ParseError("negative list length", lineno)
        alive.discard(a)
        alive.discard(a2)
        alive.add(b)
        imp = []
        for _ in range(k):
            if i >= len(lines):
                raise ParseError("truncated impurity list", lineno)
            lineno, toks = lines[i]
            i += 1
            if len(toks) != 3:
                raise ParseError("impurity line must be 'C ra ra2'", lineno)
            c = _int(toks[0], lineno)
            if c not in alive or c == b:
                raise ParseError(f"part {c} is not a part of P_{t} other than {b}", lineno)
            try:
                ra, ra2 = Rel(toks[1]), Rel(toks[2])
            except ValueError:
                raise ParseError(f"unknown relation token in {toks[1:]}", lineno) from None
            imp.append((c, ra, ra2))
        steps.append(Step(a, a2, b, tuple(imp)))
    if i != len(lines):
        raise ParseError(f"expected {n - 1} records, found more", lines[i][0])
    return ContractionSequence(n, steps)


def format_contraction_sequence(cs: ContractionSequence) -> str:
    out = []
    for st in cs.steps:
        out.append(f"{st.a} {st.a2} {st.b} {len(st.impure)}")
        out.extend(f"{c} {ra.value} {ra2.value}" for c, ra, ra2 in st.impure)
    return "\n".join(out) + ("\n" if out else "")


# ---------------------------------------------------------------------- replay

class _Replay:
    """Edge counts between the parts of the current partition."""

    def __init__(self, g: Graph):
        self.g = g
        self.size = {v: 1 for v in g.vertices()}
        self.cnt: dict[int, dict[int, int]] = {v: {u: 1 for u in g.adj[v]} for v in g.vertices()}
        self.imp: dict[int, set[int]] = {v: set() for v in g.vertices()}

    def rel(self, p: int, q: int) -> Rel:
        c = self.cnt[p].get(q, 0)
        if c == 0:
            return Rel.ANTI
        if c == self.size[p] * self.size[q]:
            return Rel.COMPLETE
        return Rel.IMPURE

    def merge(self, a: int, a2: int, b: int) -> set[int]:
        ca, ca2 = self.cnt.pop(a), self.cnt.pop(a2)
        merged = dict(ca)
        for q, c in ca2.items():
            merged[q] = merged.get(q, 0) + c
        merged.pop(a, None)
        merged.pop(a2, None)
        self.size[b] = self.size.pop(a) + self.size.pop(a2)
        self.cnt[b] = merged
        for q, c in merged.items():
            row = self.cnt[q]
            row.pop(a, None)
            row.pop(a2, None)
            row[b] = c
        for q in self.imp.pop(a) | self.imp.pop(a2):
            if q in self.imp:
                self.imp[q].discard(a)
                self.imp[q].discard(a2)
        sb = self.size[b]
        new_imp = {q for q, c in merged.items() if c != sb * self.size[q]}
        self.imp[b] = new_imp
        for q in new_imp:
            self.imp[q].add(b)
        return new_imp


def build_sequence(g: Graph, merges: Iterable[tuple[int, int]]) -> ContractionSequence:
    """Annotated sequence for the given merge order (ids assigned in order)."""
    n = g.n
    rp = _Replay(g)
    steps = []
    for i, (a, a2) in enumerate(merges):
        b = n + i + 1
        if a not in rp.size or a2 not in rp.size or a == a2:
            raise ValueError(f"invalid merge ({a}, {a2}) at time {i + 2}")
        cands = (set(rp.cnt[a]) | set(rp.cnt[a2])) - {a, a2}
        before = {c: (rp.rel(c, a), rp.rel(c, a2)) for c in cands}
        new_imp = rp.merge(a, a2, b)
        lst = tuple((c, *before[c]) for c in sorted(new_imp))
        steps.append(Step(a, a2, b, lst))
    return ContractionSequence(n, steps)


def validate(g: Graph, cs: ContractionSequence) -> int:
    """Replay cs against g and return its width; raise on any disagreement."""
    if cs.n != g.n:
        raise ValidationError(f"sequence is for {cs.n} vertices, graph has {g.n}")
    n = g.n
    rp = _Replay(g)
    width = 0
    for t in range(2, n + 1):
        st = cs.step(t)
        a, a2, b = st.a, st.a2, st.b
        if a not in rp.size or a2 not in rp.size or a == a2:
            raise ValidationError(f"time {t}: parts {a}, {a2} are not two parts of P_{t - 1}", t, (a, a2))
        if b != n + t - 1 or b in rp.size:
            raise ValidationError(f"time {t}: new part must have id {n + t - 1}", t)
        claimed = {}
        for c, ra, ra2 in st.impure:
            if c in claimed:
                raise ValidationError(f"time {t}: part {c} listed twice", t, (c, b))
            if c not in rp.size or c in (a, a2):
                raise ValidationError(f"time {t}: listed part {c} is not in P_{t}", t, (c, b))
            got = (rp.rel(c, a), rp.rel(c, a2))
            if got[0] != ra:
                raise ValidationError(
                    f"time {t}: pair ({c}, {a}) is {got[0].name}, list says {ra.name}", t, (c, a))
            if got[1] != ra2:
                raise ValidationError(
                    f"time {t}: pair ({c}, {a2}) is {got[1].name}, list says {ra2.name}", t, (c, a2))
            claimed[c] = (ra, ra2)
        new_imp = rp.merge(a, a2, b)
        if set(claimed) != new_imp:
            extra = sorted(set(claimed) - new_imp)
            missing = sorted(new_imp - set(claimed))
            c = (extra or missing)[0]
            what = "listed but not impure" if extra else "impure but not listed"
            raise ValidationError(f"time {t}: pair ({c}, {b}) {what}", t, (c, b))
        width = max(width, len(new_imp), *(len(rp.imp[c]) for c in new_imp))
    return width


# ------------------------------------------------------------------- reindexing

def reindex_convex(g: Graph, cs: ContractionSequence) -> tuple[Graph, ContractionSequence, dict[int, int]]:
    """Relabel vertices by a pre-order of the contraction tree.

    Every part of every partition becomes an interval.  Merged part ids are
    unchanged; returns the new graph, the new sequence and the map old -> new.
    """
    n = g.n
    order = cs.tree.preorder_leaves()
    eta = {v: i for i, v in enumerate(order, start=1)}

    def ren(p: int) -> int:
        return eta[p] if p <= n else p

    g2 = g.relabel(eta)
    steps = [Step(ren(s.a), ren(s.a2), s.b, tuple((ren(c), ra, ra2) for c, ra, ra2 in s.impure))
             for s in cs.steps]
    return g2, ContractionSequence(n, steps), eta


def part_intervals(cs: ContractionSequence) -> dict[int, tuple[int, int]]:
    """Interval [lo, hi] of each part; raises if the sequence is not convex."""
    n = cs.n
    iv = {v: (v, v) for v in range(1, n + 1)}
    size = {v: 1 for v in range(1, n + 1)}
    for st in cs.steps:
        lo = min(iv[st.a][0], iv[st.a2][0])
        hi = max(iv[st.a][1], iv[st.a2][1])
        size[st.b] = size[st.a] + size[st.a2]
        if hi - lo + 1 != size[st.b]:
            raise ValueError(f"part {st.b} is not an interval")
        iv[st.b] = (lo, hi)
    return iv


def is_convex(cs: ContractionSequence) -> bool:
    try:
        part_intervals(cs)
    except ValueError:
        return False
    return True
