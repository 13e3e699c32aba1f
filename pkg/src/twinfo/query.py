"""Query answering for a fixed formula: build once, then decide G |= phi(w)
for single tuples w by assembling the local type of w from precomputed
tables along the times at which groups of its entries come close."""
from __future__ import annotations

from itertools import combinations
from typing import Mapping, Sequence

from .buildutil import bulk_build
from .calculus import TypeCalculus
from .closetree import CloseTree, PathProductIndex
from .errors import PreconditionError
from .graph import Graph
from .logic import Formula
from .proximity import RangeIndex, build_firstclose_rectangles
from .regions import compute_relevant_regions
from .sequence import ContractionSequence, reindex_convex, validate
from .types import GLOBAL_TYPES, check_rank, eval_on_type, to_global_type


class QueryEngine:
    def __init__(self, g: Graph, cs: ContractionSequence, phi: Formula, with_regions: bool = True):
        with bulk_build():
            self._build(g, cs, phi, with_regions)

    def _build(self, g: Graph, cs: ContractionSequence, phi: Formula, with_regions: bool) -> None:
        validate(g, cs)
        self.phi = phi
        self.variables = phi.free_vars
        self.m = m = len(self.variables)
        if m == 0:
            raise PreconditionError("query formulas need free variables; use model checking for sentences")
        self.k = k = phi.rank()
        check_rank(k)
        self.r = r = 2 ** k
        self.g0 = g
        self.g, self.cs, self.eta = reindex_convex(g, cs)
        self.inv = {b: a for a, b in self.eta.items()}
        self.n = g.n
        self.calc = TypeCalculus(self.g, self.cs, k - 1)
        self.ranges = RangeIndex(self.n, build_firstclose_rectangles(self.g, self.cs, r, self.calc.ti))
        self.trees: dict[int, CloseTree] = {}
        self.warps: dict[int, PathProductIndex] = {}
        for j in range(1, m + 1):
            self.trees[j] = CloseTree(self.calc, j, k, self.trees)
            self.warps[j] = PathProductIndex(self.trees[j])
        self.by_subset = {z: self.trees[len(z)]
                          for j in range(1, m + 1) for z in combinations(self.variables, j)}
        self.regions = compute_relevant_regions(self.g, self.cs, r * (m + 1)) if with_regions else None
        top = self.trees[m]
        root_part = self.calc.ti.root() if self.n > 1 else 1
        self.accepted = frozenset(
            tau for tau in top.universe[top.root]
            if eval_on_type(to_global_type(self.calc.arena, tau, root_part), phi, self.variables))

    # ------------------------------------------------------------------
    def _tuple(self, w) -> tuple[int, ...]:
        if isinstance(w, Mapping):
            if set(w) != set(self.variables):
                raise PreconditionError(f"assignment must cover exactly {list(self.variables)}")
            w = tuple(w[x] for x in self.variables)
        w = tuple(w)
        if len(w) != self.m:
            raise PreconditionError(f"expected {self.m} values")
        for v in w:
            if not 1 <= v <= self.n:
                raise PreconditionError(f"vertex {v} out of range")
        return tuple(self.eta[v] for v in w)

    def local_type(self, w, trace: list | None = None) -> int:
        """ltp^k at the last time of the (original-id) tuple w."""
        verts = self._tuple(w)
        m, n = self.m, self.n
        part_at = self.calc.ti.part_at
        close = {}
        for i in range(m):
            for j in range(i + 1, m):
                close[(i, j)] = 1 if verts[i] == verts[j] else self.ranges.query(verts[i], verts[j])
        times = sorted(set(close.values()) | {1, n})
        born: dict[tuple[int, ...], tuple[int, int, int]] = {}
        prev_comps: list[tuple[int, ...]] = []
        for s in times:
            comps = _components(m, close, s)
            for z in comps:
                if z in born:
                    continue
                tree = self.trees[len(z)]
                wz = tuple(verts[i] for i in z)
                uz = tuple(part_at(v, s) for v in wz)
                nid = tree.node(uz, s)
                if s == 1:
                    tau = next(iter(tree.universe[nid]))
                else:
                    subs = [y for y in prev_comps if set(y) <= set(z)]
                    combo = []
                    for y in subs:
                        t_y, node_y, tau_y = born[y]
                        sub_tree = self.trees[len(y)]
                        target = sub_tree.node(tuple(part_at(verts[i], s - 1) for i in y), s - 1)
                        combo.append(self.warps[len(y)].warp(node_y, target, tau_y))
                    vz = tuple(part_at(v, s - 1) for v in wz)
                    tau = tree.gamma[nid].get((vz, tuple(combo)))
                    if tau is None:
                        raise AssertionError("missing registration entry")
                born[z] = (s, nid, tau)
                if trace is not None:
                    trace.append((z, s, tau))
            prev_comps = comps
        full = tuple(range(m))
        _, nid, tau = born[full]
        top = self.trees[m]
        return self.warps[m].warp(nid, top.root, tau)

    def answer(self, w) -> bool:
        return self.local_type(w) in self.accepted


def _components(m: int, close: dict[tuple[int, int], int], s: int) -> list[tuple[int, ...]]:
    parent = list(range(m))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (i, j), t in close.items():
        if t <= s:
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)
    return sorted(tuple(g) for g in groups.values())


def build_query_engine(g: Graph, cs: ContractionSequence, phi: Formula, **kw) -> QueryEngine:
    return QueryEngine(g, cs, phi, **kw)


def answer(engine: QueryEngine, w) -> bool:
    return engine.answer(w)
