"""Effective local-type calculus over a contraction sequence.

Local types are computed without looking at whole tuples of vertices: trim
lowers the rank, join combines the types of two far-apart tuples and promote
moves a type from time s to time s+1.  The only realized information kept is,
for every part and rank, the set of local types of single vertices in it
(its universe), maintained by a forward scan that only touches parts near
each contraction.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

from . import atomic as at
from .errors import PreconditionError
from .graph import Graph
from .sequence import ContractionSequence, Rel, partition_at
from .timeline import History, TimeIndex
from .trigraph import Trigraph
from .types import LocalTypeOracle, TypeArena, abstract_bound, check_rank


@dataclass(frozen=True)
class TypeUniverse:
    u: tuple[int, ...]
    s: int
    k: int
    realized: frozenset[int]
    abstract_bound: float | int

    def __len__(self) -> int:
        return len(self.realized)


class TypeCalculus:
    def __init__(self, g: Graph, cs: ContractionSequence, universe_rank: int,
                 arena: TypeArena | None = None, index: TimeIndex | None = None):
        if universe_rank >= 0:
            check_rank(universe_rank)
        self.g = g
        self.cs = cs
        self.n = g.n
        self.ti = index if index is not None else TimeIndex(g, cs)
        self.arena = arena if arena is not None else TypeArena()
        self.K = universe_rank
        self._t1: dict[tuple, int] = {}
        self._trim: dict[tuple, int] = {}
        self._join: dict[tuple, int] = {}
        self._perm: dict[tuple, int] = {}
        self._promote: dict[tuple, int] = {}
        self.universes = [History() for _ in range(universe_rank + 1)]
        self.updates = 0
        self._scan()

    # ------------------------------------------------------------ time 1
    def time1_type(self, verts: tuple[int, ...], k: int) -> int:
        """ltp^k_1 of a vertex tuple: at time 1 nothing is impure."""
        key = (verts, k)
        got = self._t1.get(key)
        if got is not None:
            return got
        atom = at.atomic_of(self.g, verts)
        if k == 0:
            tid = self.arena.intern(0, verts, atom)
        else:
            tid = self.arena.intern(k, verts, atom,
                                    {self.time1_type(verts + (b,), k - 1) for b in set(verts)})
        self._t1[key] = tid
        return tid

    # ---------------------------------------------------------- universes
    def _scan(self) -> None:
        n = self.n
        for j, hist in enumerate(self.universes):
            for v in range(1, n + 1):
                hist.set(v, 1, frozenset((self.time1_type((v,), j),)))
        for t in range(2, n + 1):
            s = t - 1
            b = self.cs.step(t).b
            for j, hist in enumerate(self.universes):
                for q in sorted(self.ti.ball((b,), t, 2 ** j)):
                    pre = self.ti.preimage(q, t)
                    new = frozenset(self.promote(tau, s) for p in pre for tau in hist.get(p, s))
                    if q == b or new != hist.get(q, s):
                        hist.set(q, t, new)
                        self.updates += 1

    def universe(self, part: int, s: int, k: int) -> frozenset[int]:
        """Local k-types at time s of the single vertices of a part."""
        if k > self.K:
            raise PreconditionError(f"universes were only built up to rank {self.K}")
        return self.universes[k].get(part, s)

    # ------------------------------------------------------------- trim
    def trim(self, tid: int, s: int) -> int:
        key = (tid, s)
        got = self._trim.get(key)
        if got is not None:
            return got
        rank, parts, atom, members = self.arena[tid]
        if rank == 0:
            raise ValueError("cannot trim a rank-0 type")
        if rank == 1:
            out = self.arena.intern(0, parts, atom)
        else:
            near = self.ti.ball(parts, s, 2 ** (rank - 2))
            arena = self.arena
            out = arena.intern(rank - 1, parts, atom,
                               {self.trim(b, s) for b in members if arena[b][1][-1] in near})
        self._trim[key] = out
        return out

    def lower(self, tid: int, s: int, k: int) -> int:
        while self.arena.rank(tid) > k:
            tid = self.trim(tid, s)
        return tid

    # ---------------------------------------------------------- permute
    def permute(self, tid: int, order: tuple[int, ...]) -> int:
        """Type of the tuple (a[order[0]], a[order[1]], ...)."""
        if order == tuple(range(len(order))):
            return tid
        key = (tid, order)
        got = self._perm.get(key)
        if got is not None:
            return got
        rank, parts, atom, members = self.arena[tid]
        new_parts = tuple(parts[i] for i in order)
        new_atom = at.permute(atom, order)
        if rank == 0:
            out = self.arena.intern(0, new_parts, new_atom)
        else:
            ext = order + (len(order),)
            out = self.arena.intern(rank, new_parts, new_atom, {self.permute(b, ext) for b in members})
        self._perm[key] = out
        return out

    # ------------------------------------------------------------- join
    def _cross_atomic(self, u, a1, v, a2, s) -> at.Atomic:
        rel = self.ti.rel

        def cross(i: int, j: int) -> int:
            r = rel(u[i], v[j], s)
            if r is Rel.IMPURE:
                raise PreconditionError("join of tuples at impurity distance 1")
            return at.ADJ if r is Rel.COMPLETE else at.NON

        return at.concat(a1, len(u), a2, len(v), cross)

    def join(self, t1: int, t2: int, s: int) -> int:
        """ltp^k_s of a concatenated tuple from the types of two tuples at
        impurity distance greater than 2^k."""
        key = (t1, t2, s)
        got = self._join.get(key)
        if got is not None:
            return got
        arena = self.arena
        k, u, a1, mem1 = arena[t1]
        k2, v, a2, mem2 = arena[t2]
        if k != k2:
            raise ValueError("join needs two types of equal rank")
        atom = self._cross_atomic(u, a1, v, a2, s)
        if k == 0:
            out = arena.intern(0, u + v, atom)
        else:
            m, l = len(u), len(v)
            ta, tb = self.trim(t1, s), self.trim(t2, s)
            order = tuple(range(m)) + tuple(range(m + 1, m + l + 1)) + (m,)
            members = {self.permute(self.join(c, tb, s), order) for c in mem1}
            members.update(self.join(ta, c, s) for c in mem2)
            out = arena.intern(k, u + v, atom, members)
        self._join[key] = out
        return out

    def check_far(self, u: tuple[int, ...], v: tuple[int, ...], s: int, k: int) -> None:
        near = self.ti.ball(tuple(u), s, 2 ** k)
        if any(p in near for p in v):
            raise PreconditionError(f"tuples are within impurity distance {2 ** k} at time {s}")

    # ---------------------------------------------------------- promote
    def untouched(self, parts: tuple[int, ...], s: int, k: int) -> bool:
        """No part is merged at s+1 and all are farther than 2^k from the new part."""
        st = self.cs.step(s + 1)
        if st.a in parts or st.a2 in parts:
            return False
        near = self.ti.ball((st.b,), s + 1, 2 ** k)
        return not any(p in near for p in parts)

    def promote(self, tid: int, s: int) -> int:
        """ltp^k_{s+1} of a tuple from its ltp^k_s."""
        key = (tid, s)
        got = self._promote.get(key)
        if got is not None:
            return got
        arena = self.arena
        k, u, atom, members = arena[tid]
        if self.untouched(u, s, k):
            self._promote[key] = tid
            return tid
        ti = self.ti
        u2 = tuple(ti.image(p, s) for p in u)
        if k == 0:
            out = arena.intern(0, u2, atom)
        else:
            radius = 2 ** (k - 1)
            new_members = {self.promote(b, s) for b in members}
            old_near = ti.ball(u, s, radius)
            ta = None
            for q in ti.ball(u2, s + 1, radius):
                for v in ti.preimage(q, s + 1):
                    if v in old_near:
                        continue
                    if ta is None:
                        ta = self.trim(tid, s)
                    for gamma in self.universe(v, s, k - 1):
                        new_members.add(self.promote(self.join(ta, gamma, s), s))
            out = arena.intern(k, u2, atom, new_members)
        self._promote[key] = out
        return out

    def warp(self, tid: int, s: int, t: int) -> int:
        """ltp^k_t from ltp^k_s, one contraction at a time."""
        for x in range(s, t):
            tid = self.promote(tid, x)
        return tid

    # ---------------------------------------------------------- helpers
    def width(self) -> int:
        hist = self.ti.imp
        return max((len(v) for vals in hist.values.values() for v in vals), default=0)

    def oracle(self, s: int) -> LocalTypeOracle:
        """Reference ltp over P_s sharing this calculus' arena."""
        return LocalTypeOracle(self.g, partition_at(self.cs, s), self.arena)


# ------------------------------------------------------------ table views

def _covers(trigraph: Trigraph | None, parts: Iterable[int]) -> None:
    if trigraph is None:
        return
    have = set(trigraph.parts)
    missing = sorted(set(parts) - have)
    if missing:
        raise PreconditionError(f"trigraph does not cover parts {missing}")


def trim_table(calc: TypeCalculus, u: tuple[int, ...], s: int, k: int,
               domain: Iterable[int]) -> dict[int, int]:
    if k < 1:
        raise ValueError("trim needs k >= 1")
    out = {}
    for tau in domain:
        rank, parts = calc.arena[tau][0], calc.arena[tau][1]
        if rank != k or parts != tuple(u):
            raise PreconditionError("type is not in the universe of (u, s, k)")
        out[tau] = calc.trim(tau, s)
    return out


def join_table(calc: TypeCalculus, u: tuple[int, ...], v: tuple[int, ...], s: int, k: int,
               dom_u: Iterable[int], dom_v: Iterable[int],
               vic: Trigraph | None = None) -> dict[tuple[int, int], int]:
    calc.check_far(u, v, s, k)
    if vic is not None:
        _covers(vic, calc.ti.ball(tuple(u) + tuple(v), s, 2 ** k))
    dom_v = list(dom_v)
    return {(a, b): calc.join(a, b, s) for a in dom_u for b in dom_v}


def promote_table(calc: TypeCalculus, u: tuple[int, ...], s: int, k: int,
                  domain: Iterable[int], region: Trigraph | None = None) -> dict[int, int]:
    if not 1 <= s < calc.n:
        raise ValueError(f"promotion needs 1 <= s < {calc.n}")
    if region is not None:
        _covers(region, calc.ti.ball(tuple(u), s, 2 ** k))
    return {tau: calc.promote(tau, s) for tau in domain}


def warp_function(calc: TypeCalculus, u: tuple[int, ...], s: int, t: int, k: int,
                  domain: Iterable[int]) -> dict[int, int]:
    if t < s:
        raise ValueError("warp goes forward in time")
    out = {}
    for tau in domain:
        cur, parts = tau, tuple(u)
        for x in range(s, t):
            if calc.untouched(parts, x, k):
                continue
            cur = calc.promote(cur, x)
            parts = calc.arena.parts(cur)
        out[tau] = cur
    return out


def enumerate_types(calc: TypeCalculus, u: tuple[int, ...], s: int, k: int,
                    vic: Trigraph | None = None, budget: int = 200_000) -> TypeUniverse:
    """Realized local k-types at time s of the vertex tuples inside u."""
    u = tuple(u)
    if vic is not None:
        _covers(vic, calc.ti.ball(u, s, 2 ** k))
    if len(u) == 1 and k <= calc.K:
        realized = calc.universe(u[0], s, k)
    else:
        pools = [sorted(calc.ti.members(p)) for p in u]
        total = 1
        for p in pools:
            total *= len(p)
        if total > budget:
            raise PreconditionError(f"{total} tuples exceed the budget {budget}")
        oracle = calc.oracle(s)
        realized = frozenset(oracle.ltp(tuple(w), k) for w in itertools.product(*pools))
    return TypeUniverse(u, s, k, realized, abstract_bound(len(u), k, calc.width()))
