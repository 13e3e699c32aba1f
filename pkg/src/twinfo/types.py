"""Hash-consed type arenas, the brute-force type oracles and evaluation of
formulas on types.

A type is an integer id into an arena.  Each record stores

    (rank, key, atomic, members)

where ``key`` is the part tuple for local types and the arity for global
types, ``atomic`` is the atomic type of the tuple (kept at every rank, it is
determined by the members anyway) and ``members`` is a sorted tuple of ids of
rank-(k-1) types of tuples extended by one position at the end.
"""
from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from . import atomic as at
from .errors import PreconditionError, RankCapError
from .graph import Graph
from .logic import And, Edge, Eq, Exists, Forall, Formula, Not, Or, sort_vars

MAX_RANK = 4


def check_rank(k: int) -> None:
    if k < 0:
        raise ValueError("rank must be non-negative")
    if k > MAX_RANK:
        raise RankCapError(f"rank {k} exceeds the supported cap {MAX_RANK}")


class TypeArena:
    def __init__(self) -> None:
        self.records: list[tuple] = []
        self.index: dict[tuple, int] = {}
        self._global_cache: dict[int, int] = {}

    def intern(self, rank: int, key, atomic: at.Atomic, members: Iterable[int] = ()) -> int:
        rec = (rank, key, atomic, tuple(sorted(set(members))))
        tid = self.index.get(rec)
        if tid is None:
            tid = len(self.records)
            self.records.append(rec)
            self.index[rec] = tid
        return tid

    def __getitem__(self, tid: int) -> tuple:
        return self.records[tid]

    def __len__(self) -> int:
        return len(self.records)

    def rank(self, tid: int) -> int:
        return self.records[tid][0]

    def parts(self, tid: int) -> tuple[int, ...]:
        return self.records[tid][1]

    def atomic(self, tid: int) -> at.Atomic:
        return self.records[tid][2]

    def members(self, tid: int) -> tuple[int, ...]:
        return self.records[tid][3]


GLOBAL_TYPES = TypeArena()


def as_tuple(asg) -> tuple[int, ...]:
    if isinstance(asg, Mapping):
        return tuple(asg[x] for x in sort_vars(asg))
    return tuple(asg)


# ------------------------------------------------------------------ oracles

def atomic_type(g: Graph, asg) -> at.Atomic:
    return at.atomic_of(g, as_tuple(asg))


class GlobalTypeOracle:
    """tp^k by exhaustive recursion over all vertices."""

    def __init__(self, g: Graph, arena: TypeArena = GLOBAL_TYPES):
        self.g = g
        self.arena = arena
        self._memo: dict[tuple, int] = {}

    def tp(self, verts: tuple[int, ...], k: int) -> int:
        key = (verts, k)
        got = self._memo.get(key)
        if got is not None:
            return got
        atom = at.atomic_of(self.g, verts)
        if k == 0:
            tid = self.arena.intern(0, len(verts), atom)
        else:
            tid = self.arena.intern(k, len(verts), atom,
                                    {self.tp(verts + (b,), k - 1) for b in self.g.vertices()})
        self._memo[key] = tid
        return tid


def tp(g: Graph, asg, k: int, arena: TypeArena = GLOBAL_TYPES) -> int:
    check_rank(k)
    return GlobalTypeOracle(g, arena).tp(as_tuple(asg), k)


class LocalTypeOracle:
    """Reference ltp^k_P over an explicit partition {part id: vertices}.

    Impurity and distances are recomputed from the graph, independently of
    any contraction-sequence machinery.
    """

    def __init__(self, g: Graph, partition: Mapping[int, Iterable[int]], arena: TypeArena):
        self.g = g
        self.arena = arena
        self.parts = {p: frozenset(vs) for p, vs in partition.items()}
        self.part_of = {v: p for p, vs in self.parts.items() for v in vs}
        ids = sorted(self.parts)
        imp: dict[int, set[int]] = {p: set() for p in ids}
        for i, p in enumerate(ids):
            for q in ids[i + 1:]:
                e = sum(1 for u in self.parts[p] for v in self.parts[q] if g.has_edge(u, v))
                if 0 < e < len(self.parts[p]) * len(self.parts[q]):
                    imp[p].add(q)
                    imp[q].add(p)
        self.dist: dict[int, dict[int, int]] = {}
        for p in ids:
            d = {p: 0}
            frontier = [p]
            while frontier:
                nxt = []
                for x in frontier:
                    for y in imp[x]:
                        if y not in d:
                            d[y] = d[x] + 1
                            nxt.append(y)
                frontier = nxt
            self.dist[p] = d
        self._memo: dict[tuple, int] = {}

    def near(self, parts: tuple[int, ...], radius: int) -> list[int]:
        out = set()
        for p in set(parts):
            out.update(q for q, d in self.dist[p].items() if d <= radius)
        return sorted(out)

    def ltp(self, verts: tuple[int, ...], k: int) -> int:
        key = (verts, k)
        got = self._memo.get(key)
        if got is not None:
            return got
        parts = tuple(self.part_of[v] for v in verts)
        atom = at.atomic_of(self.g, verts)
        if k == 0:
            tid = self.arena.intern(0, parts, atom)
        else:
            members = set()
            for w in self.near(parts, 2 ** (k - 1)):
                for b in self.parts[w]:
                    members.add(self.ltp(verts + (b,), k - 1))
            tid = self.arena.intern(k, parts, atom, members)
        self._memo[key] = tid
        return tid


def ltp(g: Graph, partition, asg, k: int, arena: TypeArena | None = None) -> int:
    from .trigraph import _as_partition
    check_rank(k)
    arena = TypeArena() if arena is None else arena
    return LocalTypeOracle(g, _as_partition(partition), arena).ltp(as_tuple(asg), k)


# --------------------------------------------------------- global conversion

def to_global_type(arena: TypeArena, tid: int, root: int | None = None,
                   target: TypeArena = GLOBAL_TYPES) -> int:
    """Strip the part bookkeeping from a local type at the last time."""
    rank, parts, atom, members = arena[tid]
    if root is not None and any(p != root for p in parts):
        raise PreconditionError("local type is not taken at the final time")
    cache = arena._global_cache if target is GLOBAL_TYPES else {}
    return _to_global(arena, tid, target, cache)


def _to_global(arena: TypeArena, tid: int, target: TypeArena, cache: dict[int, int]) -> int:
    got = cache.get(tid)
    if got is not None:
        return got
    rank, parts, atom, members = arena[tid]
    out = target.intern(rank, len(parts), atom, (_to_global(arena, b, target, cache) for b in members))
    cache[tid] = out
    return out


def eval_on_type(tid: int, phi: Formula, variables: Sequence[str] | None = None,
                 arena: TypeArena = GLOBAL_TYPES) -> bool:
    """Decide phi from a global type whose positions carry ``variables``."""
    variables = tuple(phi.free_vars if variables is None else variables)
    rank, arity, _, _ = arena[tid]
    if arity != len(variables):
        raise PreconditionError(f"type has {arity} positions, formula needs {len(variables)}")
    if not phi.free() <= set(variables):
        raise PreconditionError("formula has free variables outside the type")
    if phi.rank() > rank:
        raise PreconditionError(f"formula rank {phi.rank()} exceeds type rank {rank}")
    env = {x: i for i, x in enumerate(variables)}
    return _eval_type(arena, tid, phi, env, {})


def _eval_type(arena: TypeArena, tid: int, phi: Formula, env: dict[str, int], memo: dict) -> bool:
    if isinstance(phi, (Edge, Eq)):
        c = at.code(arena.atomic(tid), env[phi.x], env[phi.y])
        return c == at.ADJ if isinstance(phi, Edge) else c == at.EQ
    if isinstance(phi, Not):
        return not _eval_type(arena, tid, phi.body, env, memo)
    if isinstance(phi, And):
        return all(_eval_type(arena, tid, p, env, memo) for p in phi.parts)
    if isinstance(phi, Or):
        return any(_eval_type(arena, tid, p, env, memo) for p in phi.parts)
    if isinstance(phi, (Exists, Forall)):
        key = (tid, id(phi), tuple(sorted(env.items())))
        got = memo.get(key)
        if got is not None:
            return got
        inner = dict(env)
        inner[phi.var] = len(arena.parts(tid)) if isinstance(arena.parts(tid), tuple) else arena.parts(tid)
        want = isinstance(phi, Exists)
        result = not want
        for b in arena.members(tid):
            if _eval_type(arena, b, phi.body, inner, memo) == want:
                result = want
                break
        memo[key] = result
        return result
    raise TypeError(f"not a formula: {phi!r}")


# ------------------------------------------------------------ counting bounds

@lru_cache(maxsize=None)
def _stirling2(m: int, c: int) -> int:
    if m == c:
        return 1
    if c == 0 or c > m:
        return 0
    return c * _stirling2(m - 1, c) + _stirling2(m - 1, c - 1)


def atomic_type_count(m: int) -> int:
    """Number of atomic types with m variables."""
    if m == 0:
        return 1
    return sum(_stirling2(m, c) * 2 ** (c * (c - 1) // 2) for c in range(1, m + 1))


def abstract_bound(m: int, k: int, d: int, cap_bits: int = 4096) -> float | int:
    """Upper bound on the number of local k-types over a fixed m-tuple of parts
    when every impurity graph has maximum degree d (inf once it exceeds
    2**cap_bits)."""
    if k == 0:
        return atomic_type_count(m)
    radius = 2 ** (k - 1)
    reach = m * sum(d ** i for i in range(radius + 1)) if d > 0 else m
    inner = abstract_bound(m + 1, k - 1, d, cap_bits)
    bits = reach * inner
    if bits > cap_bits:
        return math.inf
    return 2 ** int(bits)
