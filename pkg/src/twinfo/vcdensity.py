"""Definable set systems over a vertex set A: bipartite contraction
sequences, distance colorings, meeting times and Stone spaces."""
from __future__ import annotations

import itertools
import math
import statistics
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import PreconditionError
from .graph import Graph
from .logic import Formula, naive_eval, sort_vars
from .sequence import ContractionSequence, build_sequence, partition_at
from .timeline import TimeIndex
from .types import LocalTypeOracle, TypeArena, check_rank

DEFAULT_BUDGET = 2_000_000


@dataclass(frozen=True)
class BipartiteSequence:
    cs: ContractionSequence
    A: frozenset[int]


@dataclass(frozen=True)
class DistanceColoring:
    r: int
    color: dict[int, int]
    palette: int

    def classes(self) -> list[frozenset[int]]:
        out: dict[int, set[int]] = {}
        for v, c in self.color.items():
            out.setdefault(c, set()).add(v)
        return [frozenset(out[c]) for c in sorted(out)]


@dataclass(frozen=True)
class StoneSpace:
    A: frozenset[int]
    xvars: tuple[str, ...]
    yvars: tuple[str, ...]
    traces: dict[frozenset, tuple[int, ...]]

    def __len__(self) -> int:
        return len(self.traces)


def _vertex_set(g: Graph, A: Iterable[int]) -> frozenset[int]:
    A = frozenset(A)
    bad = [v for v in A if not 1 <= v <= g.n]
    if bad:
        raise PreconditionError(f"vertices out of range: {sorted(bad)}")
    return A


def make_bipartite(g: Graph, cs: ContractionSequence, A: Iterable[int]) -> BipartiteSequence:
    """Split every contraction into its A-side and its complement side."""
    A = _vertex_set(g, A)
    n = g.n
    if not A or len(A) == n:
        return BipartiteSequence(cs, A)
    tree = cs.tree
    # side[p] = (id of p ∩ A, id of p \ A), None for an empty side
    side: dict[int, tuple[int | None, int | None]] = {
        v: ((v, None) if v in A else (None, v)) for v in range(1, n + 1)}
    merges: list[tuple[int, int]] = []

    def fuse(x: int | None, y: int | None) -> int | None:
        if x is None or y is None:
            return y if x is None else x
        merges.append((x, y))
        return n + len(merges)

    for st in cs.steps:
        (xa, xo), (ya, yo) = side.pop(st.a), side.pop(st.a2)
        za = fuse(xa, ya)
        side[st.b] = (za, fuse(xo, yo))
    ra, ro = side[tree.root]
    fuse(ra, ro)
    return BipartiteSequence(build_sequence(g, merges), A)


def is_bipartite(bcs: BipartiteSequence) -> bool:
    cs, A = bcs.cs, bcs.A
    tree = cs.tree
    return all(tree.members(p) <= A or not (tree.members(p) & A)
               for p in range(1, 2 * cs.n - 1))


def distance_coloring(g: Graph, bcs: BipartiteSequence, r: int) -> DistanceColoring:
    """Fresh colors for uncolored off-A parts near each merge inside A."""
    A = bcs.A
    if not A:
        raise PreconditionError("A must be nonempty")
    ti = TimeIndex(g, bcs.cs)
    color: dict[int, int] = {}
    palette = 0
    for t in range(2, g.n + 1):
        st = bcs.cs.step(t)
        if not (ti.members(st.a) <= A and ti.members(st.a2) <= A):
            continue
        for q in sorted(ti.ball((st.b,), t, r)):
            mem = ti.members(q)
            if mem & A:
                continue
            fresh = [v for v in mem if v not in color]
            if fresh:
                palette += 1
                for v in fresh:
                    color[v] = palette
    rest = [v for v in range(1, g.n + 1) if v not in A and v not in color]
    if rest:
        palette += 1
        for v in rest:
            color[v] = palette
    return DistanceColoring(r, color, palette)


def meeting_time(cs: ContractionSequence, X: Iterable[int]) -> int:
    """Earliest time at which all of X lies in one part."""
    X = sorted(set(X))
    if not X:
        raise PreconditionError("meeting time of an empty set")
    tree = cs.tree
    anc = X[0]
    seen = set()
    p = anc
    while p:
        seen.add(p)
        p = tree.parent[p]
    for v in X[1:]:
        while v not in seen:
            v = tree.parent[v]
        if tree.ctime(v) > tree.ctime(anc):
            anc = v
    return tree.ctime(anc)


def _split_vars(phi: Formula, xvars: Sequence[str] | None) -> tuple[tuple[str, ...], tuple[str, ...]]:
    free = phi.free_vars
    if xvars is None:
        xvars = free[:1]
    xvars = tuple(sort_vars(xvars))
    if not set(xvars) <= set(free):
        raise PreconditionError(f"{list(xvars)} are not all free in the formula")
    return xvars, tuple(v for v in free if v not in xvars)


def stone_space(g: Graph, A: Iterable[int], phi: Formula, xvars: Sequence[str] | None = None,
                budget: int = DEFAULT_BUDGET) -> StoneSpace:
    """All traces {a in A^x : G |= phi(a, b)} over parameter tuples b in V^y."""
    A = _vertex_set(g, A)
    if not A:
        raise PreconditionError("A must be nonempty")
    xv, yv = _split_vars(phi, xvars)
    need = len(A) ** len(xv) * g.n ** len(yv)
    if need > budget:
        raise PreconditionError(f"stone space needs {need} evaluations, budget is {budget}")
    avec = list(itertools.product(sorted(A), repeat=len(xv)))
    traces: dict[frozenset, tuple[int, ...]] = {}
    for b in itertools.product(range(1, g.n + 1), repeat=len(yv)):
        asg = dict(zip(yv, b))
        tr = []
        for a in avec:
            asg.update(zip(xv, a))
            if naive_eval(g, phi, asg):
                tr.append(a)
        traces.setdefault(frozenset(tr), b)
    return StoneSpace(A, xv, yv, traces)


def count_type_classes(g: Graph, bcs: BipartiteSequence, p: Sequence[Iterable[int]], t: int,
                       k: int, nx: int = 1, budget: int = DEFAULT_BUDGET) -> int:
    """Number of classes of b ~ b' iff ltp^k_t(ab) = ltp^k_t(ab') for all a in A^x."""
    check_rank(k)
    p = [frozenset(c) for c in p]
    A = bcs.A
    if not A or any(not c for c in p):
        raise PreconditionError("A and every color class must be nonempty")
    for c in p:
        if meeting_time(bcs.cs, c) > t:
            raise PreconditionError(f"time {t} precedes the meeting time of a color class")
    tuples = list(itertools.product(*(sorted(c) for c in p)))
    avec = list(itertools.product(sorted(A), repeat=nx))
    if len(tuples) * len(avec) > budget:
        raise PreconditionError(f"class count needs {len(tuples) * len(avec)} local types, budget is {budget}")
    oracle = LocalTypeOracle(g, partition_at(bcs.cs, t), TypeArena())
    sigs = {tuple(oracle.ltp(a + b, k) for a in avec) for b in tuples}
    return len(sigs)


def distance_radius(k: int, nx: int, ny: int) -> int:
    return 2 ** k * (nx + ny - 1)


def class_count_profile(g: Graph, cs: ContractionSequence, A: Iterable[int], k: int,
                        nx: int = 1, ny: int = 1, budget: int = DEFAULT_BUDGET) -> int:
    """Largest class count over all color tuples, taken at the final time."""
    bcs = make_bipartite(g, cs, A)
    col = distance_coloring(g, bcs, distance_radius(k, nx, ny))
    classes = col.classes()
    return max((count_type_classes(g, bcs, p, g.n, k, nx, budget)
                for p in itertools.product(classes, repeat=ny)), default=0)


@dataclass(frozen=True)
class VCReport:
    rows: list[tuple[int, int, int]]
    exponent: float
    ybar: int
    flagged: bool

    def csv(self) -> str:
        lines = ["n,A,stone"] + [f"{n},{a},{s}" for n, a, s in self.rows]
        lines.append(f"# exponent={self.exponent:.4f} ybar={self.ybar} flagged={self.flagged}")
        return "\n".join(lines)


def fit_exponent(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Slope of the least-squares line through (log x, log y)."""
    lx = [math.log(x) for x in xs]
    ly = [math.log(y) for y in ys]
    if len(set(lx)) < 2:
        return 0.0
    return statistics.linear_regression(lx, ly).slope


def vc_density_report(family: Callable[[int], Graph], fraction: float, phi: Formula,
                      sizes: Sequence[int], xvars: Sequence[str] | None = None,
                      budget: int = DEFAULT_BUDGET) -> VCReport:
    """Stone-space sizes for A = the first ceil(fraction * n) vertices."""
    if not 0 < fraction <= 1:
        raise PreconditionError("fraction must lie in (0, 1]")
    xv, yv = _split_vars(phi, xvars)
    rows = []
    for n in sizes:
        try:
            g = family(n)
        except Exception as exc:
            raise PreconditionError(f"generator failed at n={n}: {exc}") from exc
        A = range(1, max(1, math.ceil(fraction * g.n)) + 1)
        rows.append((g.n, len(A), len(stone_space(g, A, phi, xv, budget))))
    exponent = fit_exponent([a for _, a, _ in rows], [s for _, _, s in rows])
    return VCReport(rows, exponent, len(yv), exponent > len(yv) + 0.3)
