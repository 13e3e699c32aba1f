"""Atomic types as flat code tuples.

An atomic type of an m-tuple stores one code per pair i < j, listed in
colex order (0,1),(0,2),(1,2),(0,3),... so that dropping the last position
is a prefix.  Codes: EQ (same vertex), ADJ (adjacent), NON (distinct, not
adjacent).
"""
from __future__ import annotations

from typing import Callable, Sequence

from .graph import Graph

EQ, ADJ, NON = 0, 1, 2

Atomic = tuple[int, ...]


def pair_index(i: int, j: int) -> int:
    if i > j:
        i, j = j, i
    return j * (j - 1) // 2 + i


def npairs(m: int) -> int:
    return m * (m - 1) // 2


def atomic_of(g: Graph, verts: Sequence[int]) -> Atomic:
    out = []
    for j in range(len(verts)):
        vj = verts[j]
        adj = g.adj[vj]
        for i in range(j):
            vi = verts[i]
            out.append(EQ if vi == vj else ADJ if vi in adj else NON)
    return tuple(out)


def code(atom: Atomic, i: int, j: int) -> int:
    if i == j:
        return EQ
    return atom[pair_index(i, j)]


def restrict(atom: Atomic, m: int) -> Atomic:
    return atom[: npairs(m)]


def permute(atom: Atomic, order: Sequence[int]) -> Atomic:
    """Atomic type of (a[order[0]], a[order[1]], ...)."""
    out = []
    for j in range(len(order)):
        oj = order[j]
        for i in range(j):
            out.append(code(atom, order[i], oj))
    return tuple(out)


def concat(a1: Atomic, m: int, a2: Atomic, l: int, cross: Callable[[int, int], int]) -> Atomic:
    """Atomic type of a tuple made of an m-tuple and an l-tuple.

    cross(i, j) gives the code between position i of the first and position
    j of the second tuple.
    """
    out = list(a1)
    for j in range(l):
        for i in range(m):
            out.append(cross(i, j))
        for i in range(j):
            out.append(a2[pair_index(i, j)])
    return tuple(out)


def is_consistent(atom: Atomic, m: int) -> bool:
    """Equality is an equivalence and adjacency respects it and is irreflexive."""
    if len(atom) != npairs(m):
        return False
    for i in range(m):
        for j in range(m):
            for k in range(m):
                if len({i, j, k}) < 3:
                    continue
                cij, cjk, cik = code(atom, i, j), code(atom, j, k), code(atom, i, k)
                if cij == EQ and cjk != cik:
                    return False
    return True


def literals(atom: Atomic, names: Sequence[str]) -> set[str]:
    """Readable literal set, e.g. {'x!=y', 'E(x,y)'}; includes x=x literals."""
    out = set()
    m = len(names)
    for j in range(m):
        out.add(f"{names[j]}={names[j]}")
        out.add(f"~E({names[j]},{names[j]})")
        for i in range(j):
            c = code(atom, i, j)
            x, y = names[i], names[j]
            out.add(f"{x}={y}" if c == EQ else f"{x}!={y}")
            out.add(f"E({x},{y})" if c == ADJ else f"~E({x},{y})")
    return out
