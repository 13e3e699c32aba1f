"""Enumeration of phi(G) over the trees of close tuples.

Enumerators are cyclic cursors: ``next()`` walks a fixed sequence and
returns END once per lap.  ``cycle()`` hands out an independent fresh lap,
which is how enumerators are nested inside each other.
"""
from __future__ import annotations

from typing import Callable, Iterable, Iterator

from .buildutil import bulk_build
from .closetree import LEAF, CloseTree
from .errors import ContractViolation, PreconditionError
from .graph import Graph
from .logic import Formula
from .query import QueryEngine
from .sequence import ContractionSequence


class _End:
    __slots__ = ()

    def __repr__(self) -> str:
        return "END"


END = _End()


class StepCounter:
    __slots__ = ("steps",)

    def __init__(self) -> None:
        self.steps = 0

    def tick(self, k: int = 1) -> None:
        self.steps += k


class Enumerator:
    __slots__ = ("_source", "_it", "counter")

    def __init__(self, source: Callable[[], Iterator], counter: StepCounter | None = None):
        self._source = source
        self._it: Iterator | None = None
        self.counter = counter

    def cycle(self) -> Iterator:
        return self._source()

    def next(self):
        if self._it is None:
            self._it = self._source()
        if self.counter is not None:
            self.counter.tick()
        try:
            return next(self._it)
        except StopIteration:
            self._it = None
            return END

    def __iter__(self) -> Iterator:
        return self.cycle()


def enum_list(items: Iterable) -> Enumerator:
    items = tuple(items)
    return Enumerator(lambda: iter(items))


def enum_product(e1: Enumerator, e2: Enumerator) -> Enumerator:
    def source():
        for a in e1.cycle():
            for b in e2.cycle():
                yield (a, b)
    return Enumerator(source)


def enum_union(e1: Enumerator, e2: Enumerator) -> Enumerator:
    """Union of two disjoint sets."""
    def source():
        yield from e1.cycle()
        yield from e2.cycle()
    return Enumerator(source)


def enum_family_union(family: Enumerator) -> Enumerator:
    """Union of pairwise disjoint nonempty sets given by an enumerator of enumerators."""
    def source():
        for e in family.cycle():
            empty = True
            for x in e.cycle():
                empty = False
                yield x
            if empty:
                raise ContractViolation("empty member in a family union")
    return Enumerator(source)


# ---------------------------------------------------------------- indexes

class RegisterIndex:
    """R^tau at each node: tuples registering there with type tau."""

    def __init__(self, tree: CloseTree, sub_s: dict[int, "SEnumerators"], counter: StepCounter):
        self.tree = tree
        self.sub_s = sub_s
        self.counter = counter
        self.flags = [frozenset(reg) for reg in tree.reg]
        self._cache: dict[tuple[int, int], Enumerator] = {}

    def R(self, nid: int, tau: int) -> Enumerator:
        key = (nid, tau)
        got = self._cache.get(key)
        if got is None:
            entries = self.tree.reg[nid].get(tau, ())
            got = Enumerator(lambda: self._iter_r(nid, entries))
            self._cache[key] = got
        return got

    def _iter_r(self, nid: int, entries) -> Iterator[tuple[int, ...]]:
        m = self.tree.m
        tick = self.counter.tick
        for entry in entries:
            tick()
            if entry is LEAF:
                v = self.tree.keys[nid][0][0]
                yield (v,) * m
                continue
            _, comps, subs, combo = entry
            enums = [self.sub_s[len(y)].S(sid, ty) for y, sid, ty in zip(comps, subs, combo)]
            yield from _assemble(m, comps, enums, tick)


def _assemble(m: int, comps, enums: list[Enumerator], tick) -> Iterator[tuple[int, ...]]:
    out = [0] * m

    def rec(i: int):
        if i == len(comps):
            tick()
            yield tuple(out)
            return
        y = comps[i]
        for part in enums[i].cycle():
            for pos, v in zip(y, part):
                out[pos] = v
            yield from rec(i + 1)

    return rec(0)


class DescendantIndex:
    """Bottom-up reachability flags and pruned DFS over descendants."""

    def __init__(self, tree: CloseTree, register: RegisterIndex, counter: StepCounter):
        self.tree = tree
        self.register = register
        self.counter = counter
        flags: list[frozenset[int]] = [frozenset()] * len(tree)
        for nid in range(len(tree)):
            acc = set(register.flags[nid])
            for c in tree.children[nid]:
                f = tree.fn[c]
                acc.update(flags[c] if f is None else (f[x] for x in flags[c]))
            flags[nid] = frozenset(acc)
        self.flags = flags

    def cursor(self, nid: int, tau: int) -> Iterator[tuple[int, int]]:
        """Pairs (descendant, sigma) with sigma registered there and mapped to tau."""
        tree, flags, reg = self.tree, self.flags, self.register.flags
        tick = self.counter.tick
        if tau not in flags[nid]:
            return
        stack = [(nid, frozenset((tau,)))]
        while stack:
            node, want = stack.pop()
            tick()
            for sigma in sorted(want & reg[node]):
                yield (node, sigma)
            for c in tree.children[node]:
                tick()
                f = tree.fn[c]
                if f is None:
                    pulled = want & flags[c]
                else:
                    pulled = frozenset(x for x in flags[c] if f[x] in want)
                if pulled:
                    stack.append((c, pulled))


class SEnumerators:
    """S^tau at each node: all tuples whose parts at that node's time are the
    node's tuple and whose local type there is tau."""

    def __init__(self, tree: CloseTree, register: RegisterIndex, descendant: DescendantIndex):
        self.tree = tree
        self.register = register
        self.descendant = descendant
        self._cache: dict[tuple[int, int], Enumerator] = {}

    def S(self, nid: int, tau: int) -> Enumerator:
        key = (nid, tau)
        got = self._cache.get(key)
        if got is None:
            reg = self.register
            family = Enumerator(lambda: (reg.R(v, s) for v, s in self.descendant.cursor(nid, tau)))
            got = enum_family_union(family)
            self._cache[key] = got
        return got


def build_register_index(tree: CloseTree, sub_s: dict[int, SEnumerators],
                         counter: StepCounter | None = None) -> RegisterIndex:
    return RegisterIndex(tree, sub_s, counter or StepCounter())


def build_descendant_index(tree: CloseTree, register: RegisterIndex) -> DescendantIndex:
    return DescendantIndex(tree, register, register.counter)


def build_S_enumerators(tree: CloseTree, register: RegisterIndex,
                        descendant: DescendantIndex) -> SEnumerators:
    return SEnumerators(tree, register, descendant)


class QueryEnumeration:
    """All enumeration indexes for one engine plus the answer enumerator."""

    def __init__(self, engine: QueryEngine):
        with bulk_build():
            self._build(engine)

    def _build(self, engine: QueryEngine) -> None:
        self.engine = engine
        self.counter = StepCounter()
        self.s_enums: dict[int, SEnumerators] = {}
        self.registers: dict[int, RegisterIndex] = {}
        for j in range(1, engine.m + 1):
            tree = engine.trees[j]
            reg = build_register_index(tree, self.s_enums, self.counter)
            desc = build_descendant_index(tree, reg)
            self.registers[j] = reg
            self.s_enums[j] = build_S_enumerators(tree, reg, desc)
        top = engine.trees[engine.m]
        root = top.root
        inv = engine.inv
        accepted = sorted(engine.accepted)
        s_top = self.s_enums[engine.m]
        members = enum_list([s_top.S(root, tau) for tau in accepted])
        inner = enum_family_union(members)

        def source():
            for w in inner.cycle():
                yield tuple(inv[v] for v in w)

        self.enumerator = Enumerator(source, self.counter)


def enumerate_query(g: Graph, cs: ContractionSequence, phi: Formula,
                    engine: QueryEngine | None = None) -> Enumerator:
    """Enumerator over phi(G); tuples follow the sorted free variables."""
    if not phi.free():
        raise PreconditionError("sentences have nothing to enumerate; use model checking")
    engine = engine if engine is not None else QueryEngine(g, cs, phi, with_regions=False)
    return QueryEnumeration(engine).enumerator
