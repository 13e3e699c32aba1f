"""Tree of r-close tuples of parts and fast type warping along it.

A node is a pair (u, s) of an r-close m-tuple of parts of P_s and a time s
such that s = 1, or u is within distance r of the part created at s, or the
image of u at s+1 is within distance r of the part created at s+1.  The
parent of (u, s) is the next node carrying the image of u.  An edge to the
next time carries the promote function; longer edges carry the identity.

A vertex tuple registers at the node of the first time its parts are
r-close.  The registration table of a node records, for every combination of
component types one step earlier, the resulting local type.
"""
from __future__ import annotations

import itertools

from .calculus import TypeCalculus

LEAF = None


class CloseTree:
    def __init__(self, calc: TypeCalculus, m: int, k: int, subtrees: dict[int, "CloseTree"] | None = None):
        if m < 1:
            raise ValueError("tuples need at least one position")
        self.calc = calc
        self.m = m
        self.k = k
        self.r = 2 ** k
        self.subtrees = dict(subtrees or {})
        for j in range(1, m):
            if j not in self.subtrees:
                raise ValueError(f"missing tree for {j}-tuples")
        self.keys: list[tuple[tuple[int, ...], int]] = []
        self.node_of: dict[tuple[tuple[int, ...], int], int] = {}
        self.parent: list[int] = []
        self.children: list[list[int]] = []
        self.fn: list[dict[int, int] | None] = []
        self.universe: list[frozenset[int]] = []
        self.reg: list[dict[int, list]] = []
        self.gamma: list[dict[tuple, int]] = []
        self._build()
        self.depth = self._depths()

    # ------------------------------------------------------------------
    def _new(self, u: tuple[int, ...], s: int) -> int:
        nid = len(self.keys)
        self.keys.append((u, s))
        self.node_of[(u, s)] = nid
        self.parent.append(-1)
        self.children.append([])
        self.fn.append(None)
        self.universe.append(frozenset())
        self.reg.append({})
        self.gamma.append({})
        return nid

    def node(self, u: tuple[int, ...], s: int) -> int:
        return self.node_of[(tuple(u), s)]

    @property
    def root(self) -> int:
        return len(self.keys) - 1

    def __len__(self) -> int:
        return len(self.keys)

    def _build(self) -> None:
        calc, ti, m, r, k = self.calc, self.calc.ti, self.m, self.r, self.k
        n = calc.n
        last: dict[tuple[int, ...], int] = {}
        for v in range(1, n + 1):
            u = (v,) * m
            nid = self._new(u, 1)
            tau = calc.time1_type(u, k)
            self.universe[nid] = frozenset((tau,))
            self.reg[nid] = {tau: [LEAF]}
            last[u] = nid
        for s in range(2, n + 1):
            b = calc.cs.step(s).b
            near_b = ti.ball((b,), s, r)
            cands = set()
            pool = sorted(ti.ball((b,), s, r * m))
            for u in itertools.product(pool, repeat=m):
                if any(p in near_b for p in u) and ti.close(u, s, r):
                    cands.add(u)
            if s < n:
                b1 = calc.cs.step(s + 1).b
                near_b1 = ti.ball((b1,), s + 1, r)
                pool = sorted(p for q in ti.ball((b1,), s + 1, r * m) for p in ti.preimage(q, s + 1))
                for u in itertools.product(pool, repeat=m):
                    if u in cands:
                        continue
                    if any(ti.image(p, s) in near_b1 for p in u) and ti.close(u, s, r):
                        cands.add(u)
            made = []
            for u in sorted(cands):
                nid = self._new(u, s)
                made.append(nid)
                if any(p in near_b for p in u):
                    self._attach_step(nid, u, s, last)
                else:
                    c = last[u]
                    self._link(c, nid, None)
                    self.universe[nid] = self.universe[c]
            for nid in made:
                last[self.keys[nid][0]] = nid
        root = self.root
        rp = calc.ti.root() if n > 1 else 1
        if self.keys[root] != ((rp,) * m, n):
            raise AssertionError("last node is not the root")
        if any(p < 0 for p in self.parent[:root]):
            raise AssertionError("orphan node in close tree")

    def _link(self, child: int, parent: int, fn: dict[int, int] | None) -> None:
        if self.parent[child] >= 0:
            raise AssertionError("node already has a parent")
        self.parent[child] = parent
        self.children[parent].append(child)
        self.fn[child] = fn

    def _attach_step(self, nid: int, u: tuple[int, ...], s: int, last: dict) -> None:
        calc, ti, r = self.calc, self.calc.ti, self.r
        universe: set[int] = set()
        for v in itertools.product(*(ti.preimage(p, s) for p in u)):
            c = last.get(v)
            if c is not None:
                if self.keys[c][1] != s - 1:
                    raise AssertionError("step edge must come from the previous time")
                table = {tau: calc.promote(tau, s - 1) for tau in self.universe[c]}
                if all(a == b for a, b in table.items()):
                    table = None
                self._link(c, nid, table)
                universe.update(self.universe[c] if table is None else table.values())
                if v != u:
                    del last[v]
                continue
            if ti.close(v, s - 1, r):
                raise AssertionError(f"r-close tuple {v} at time {s - 1} is not a node")
            comps = ti.components(v, s - 1, r)
            subs = []
            for y in comps:
                tree = self if len(y) == self.m else self.subtrees[len(y)]
                vy = tuple(v[i] for i in y)
                subs.append(tree.node_of[(vy, s - 1)])
            pools = [self._tree_for(len(y)).universe[sid] for y, sid in zip(comps, subs)]
            for combo in itertools.product(*(sorted(p) for p in pools)):
                tau = self.combine(v, comps, combo, s)
                self.gamma[nid][(v, combo)] = tau
                self.reg[nid].setdefault(tau, []).append((v, tuple(comps), tuple(subs), combo))
                universe.add(tau)
        self.universe[nid] = frozenset(universe)

    def _tree_for(self, size: int) -> "CloseTree":
        return self if size == self.m else self.subtrees[size]

    def combine(self, v: tuple[int, ...], comps, combo, s: int) -> int:
        """Type at time s of tuples whose far-apart components at s-1 have the
        given types (join, restore variable order, promote)."""
        calc = self.calc
        tau = combo[0]
        order = list(comps[0])
        for y, ty in zip(comps[1:], combo[1:]):
            tau = calc.join(tau, ty, s - 1)
            order.extend(y)
        pos = {p: i for i, p in enumerate(order)}
        tau = calc.permute(tau, tuple(pos[j] for j in range(len(order))))
        return calc.promote(tau, s - 1)

    def _depths(self) -> list[int]:
        depth = [0] * len(self.keys)
        for nid in range(len(self.keys) - 2, -1, -1):
            depth[nid] = depth[self.parent[nid]] + 1
        return depth

    def apply_edge(self, child: int, tau: int) -> int:
        f = self.fn[child]
        return tau if f is None else f[tau]

    def is_ancestor(self, a: int, b: int) -> bool:
        """Whether b lies on the path from a to the root."""
        while a != b and self.depth[a] > self.depth[b]:
            a = self.parent[a]
        return a == b


def _compose(f: dict[int, int] | None, g: dict[int, int] | None) -> dict[int, int] | None:
    """x -> g(f(x))."""
    if f is None:
        return g
    if g is None:
        return f
    return {a: g[b] for a, b in f.items()}


class PathProductIndex:
    """Jump pointers with composed edge functions.

    Each node keeps one jump pointer in the skew-binary pattern (constant
    extra space per node) and the composition of the edge functions along the
    jump; walking from a node to an ancestor takes O(log depth) jumps.
    """

    def __init__(self, tree: CloseTree):
        self.tree = tree
        size = len(tree)
        root = tree.root
        self.jump = [0] * size
        self.jfn: list[dict[int, int] | None] = [None] * size
        self.jump[root] = root
        depth = tree.depth
        for nid in range(size - 2, -1, -1):
            p = tree.parent[nid]
            j1 = self.jump[p]
            j2 = self.jump[j1]
            if p != root and depth[p] - depth[j1] == depth[j1] - depth[j2]:
                self.jump[nid] = j2
                self.jfn[nid] = _compose(_compose(tree.fn[nid], self.jfn[p]), self.jfn[j1])
            else:
                self.jump[nid] = p
                self.jfn[nid] = tree.fn[nid]

    def warp(self, frm: int, to: int, tau: int) -> int:
        tree = self.tree
        depth = tree.depth
        if depth[to] > depth[frm]:
            raise ValueError("target is not an ancestor")
        cur = frm
        while depth[cur] > depth[to]:
            j = self.jump[cur]
            if depth[j] >= depth[to]:
                f = self.jfn[cur]
                cur = j
            else:
                f = tree.fn[cur]
                cur = tree.parent[cur]
            if f is not None:
                tau = f[tau]
        if cur != to:
            raise ValueError("target is not an ancestor")
        return tau


def warp_query(tree: CloseTree, idx: PathProductIndex, frm: int, to: int, tau: int) -> int:
    return idx.warp(frm, to, tau)


def build_close_tree(calc: TypeCalculus, k: int, m: int) -> CloseTree:
    """Tree for m-tuples, building the trees for shorter tuples on the way."""
    trees: dict[int, CloseTree] = {}
    for j in range(1, m + 1):
        trees[j] = CloseTree(calc, j, k, trees)
    return trees[m]
