"""Model checking of sentences and graphs defined by two-variable formulas."""
from __future__ import annotations

from .buildutil import bulk_build
from .calculus import TypeCalculus
from .errors import PreconditionError
from .graph import Graph
from .logic import Formula
from .query import QueryEngine
from .sequence import ContractionSequence, build_sequence, reindex_convex, validate
from .types import GLOBAL_TYPES, check_rank, eval_on_type, to_global_type


class ModelChecker:
    """Keeps one type calculus per graph so several sentences share the scan."""

    def __init__(self, g: Graph, cs: ContractionSequence, rank: int = 0):
        validate(g, cs)
        self.g, self.cs, _ = reindex_convex(g, cs)
        self.calc: TypeCalculus | None = None
        self._ensure(rank)

    def _ensure(self, q: int) -> TypeCalculus:
        check_rank(q)
        if self.calc is None or self.calc.K < q - 1:
            with bulk_build():
                self.calc = TypeCalculus(self.g, self.cs, q - 1)
        return self.calc

    def theory(self, q: int) -> int:
        """tp^q of the whole graph as a global type of arity 0."""
        calc = self._ensure(q)
        if q == 0:
            return GLOBAL_TYPES.intern(0, 0, ())
        n = self.g.n
        root = calc.ti.root() if n > 1 else 1
        members = {to_global_type(calc.arena, tau, root) for tau in calc.universe(root, n, q - 1)}
        return GLOBAL_TYPES.intern(q, 0, (), members)

    def check(self, phi: Formula) -> bool:
        if phi.free():
            raise PreconditionError(f"not a sentence: free variables {sorted(phi.free())}")
        return eval_on_type(self.theory(phi.rank()), phi, ())


def model_check(g: Graph, cs: ContractionSequence, phi: Formula) -> bool:
    if phi.free():
        raise PreconditionError(f"not a sentence: free variables {sorted(phi.free())}")
    return ModelChecker(g, cs, phi.rank()).check(phi)


def interpret(g: Graph, cs: ContractionSequence, phi: Formula) -> tuple[Graph, ContractionSequence]:
    """The graph phi(G) with a contraction sequence obtained by splitting every
    part of every P_t by the local q-types of its vertices."""
    if len(phi.free()) != 2:
        raise PreconditionError("interpretation needs a formula with exactly two free variables")
    validate(g, cs)
    n = g.n
    engine = QueryEngine(g, cs, phi, with_regions=False)
    x, y = engine.variables
    edges = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)
             if engine.answer({x: u, y: v}) and engine.answer({x: v, y: u})]
    h = Graph.from_edges(n, edges)
    if n == 1:
        return h, build_sequence(h, [])

    q = phi.rank()
    calc = TypeCalculus(g, cs, q)
    ti = calc.ti
    # classes[p] maps a local q-type to the vertices of part p having it
    classes: dict[int, dict[int, frozenset[int]]] = {
        v: {calc.time1_type((v,), q): frozenset((v,))} for v in range(1, n + 1)}
    ids = {frozenset((v,)): v for v in range(1, n + 1)}
    merges: list[tuple[int, int]] = []

    def fuse(blocks: list[frozenset[int]]) -> frozenset[int]:
        blocks.sort(key=min)
        acc = blocks[0]
        for nxt in blocks[1:]:
            merges.append((ids.pop(acc), ids.pop(nxt)))
            acc = acc | nxt
            ids[acc] = n + len(merges)
        return acc

    for t in range(2, n + 1):
        s = t - 1
        st = cs.step(t)
        for p in sorted(ti.ball((st.b,), t, 2 ** q)):
            grouped: dict[int, list[frozenset[int]]] = {}
            for old in ti.preimage(p, t):
                for tau, block in classes.pop(old).items():
                    grouped.setdefault(calc.promote(tau, s), []).append(block)
            classes[p] = {tau: fuse(blocks) for tau, blocks in grouped.items()}
    fuse(list(classes[ti.root()].values()))
    return h, build_sequence(h, merges)
