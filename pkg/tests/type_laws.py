"""Exhaustive checks of the local-type calculus against the reference ltp.

Every check returns the number of comparisons made and raises
AssertionError on the first disagreement.
"""
from __future__ import annotations

import itertools

from twinfo.calculus import TypeCalculus, join_table, promote_table, trim_table, warp_function
from twinfo.regions import compute_relevant_regions
from twinfo.sequence import partition_at, validate
from twinfo.types import abstract_bound, to_global_type, tp


class Suite:
    def __init__(self, g, cs, kmax: int = 3, pair_kmax: int = 2):
        self.g, self.cs, self.n = g, cs, g.n
        self.kmax, self.pair_kmax = kmax, pair_kmax
        self.width = validate(g, cs)
        self.calc = TypeCalculus(g, cs, kmax)
        self.oracles = [None] + [self.calc.oracle(t) for t in range(1, g.n + 1)]
        vs = list(g.vertices())
        self.tuples = {1: [(v,) for v in vs], 2: list(itertools.product(vs, repeat=2))}

    def _ks(self, m):
        return range(self.kmax + 1) if m == 1 else range(self.pair_kmax + 1)

    def _all(self):
        for m, ws in self.tuples.items():
            for k in self._ks(m):
                for w in ws:
                    yield m, k, w

    def basic(self) -> int:
        """Equal rank-k types have equal trims and equal part tuples; trim is exact."""
        calc, count = self.calc, 0
        for t in range(1, self.n + 1):
            o = self.oracles[t]
            for m, k, w in self._all():
                tau = o.ltp(w, k)
                assert calc.arena.parts(tau) == tuple(o.part_of[v] for v in w)
                if k:
                    u = calc.arena.parts(tau)
                    table = trim_table(calc, u, t, k, [tau])
                    assert table[tau] == o.ltp(w, k - 1)
                count += 1
        return count

    def universes(self) -> int:
        calc, count = self.calc, 0
        for t in range(1, self.n + 1):
            o = self.oracles[t]
            for p, mem in partition_at(self.cs, t).items():
                for k in range(self.kmax + 1):
                    got = calc.universe(p, t, k)
                    assert got == {o.ltp((v,), k) for v in mem}
                    assert len(got) <= abstract_bound(1, k, self.width)
                    count += 1
        return count

    def compositionality(self) -> int:
        """join of far-apart tuples equals the type of the concatenation."""
        calc, count = self.calc, 0
        for t in range(1, self.n + 1):
            o = self.oracles[t]
            for (m, k, a), b in itertools.product(self._all(), self.tuples[1]):
                if m + 1 > 2 and k > self.pair_kmax:
                    continue
                pa = {o.part_of[v] for v in a}
                pb = o.part_of[b[0]]
                if any(o.dist[p].get(pb, float("inf")) <= 2 ** k for p in pa):
                    continue
                ta, tb = o.ltp(a, k), o.ltp(b, k)
                u, v = calc.arena.parts(ta), calc.arena.parts(tb)
                table = join_table(calc, u, v, t, k, [ta], [tb])
                assert table[(ta, tb)] == o.ltp(a + b, k)
                count += 1
        return count

    def consistency(self) -> int:
        """promote maps ltp at s to ltp at s+1; equal types stay equal."""
        calc, count = self.calc, 0
        for s in range(1, self.n):
            o, o2 = self.oracles[s], self.oracles[s + 1]
            seen: dict[int, int] = {}
            for m, k, w in self._all():
                tau = o.ltp(w, k)
                nxt = promote_table(calc, calc.arena.parts(tau), s, k, [tau])[tau]
                assert nxt == o2.ltp(w, k)
                assert seen.setdefault(tau, nxt) == nxt
                count += 1
        return count

    def warp(self) -> int:
        """warp from s to t agrees with the reference and composes."""
        calc, count = self.calc, 0
        n = self.n
        for m, k, w in self._all():
            ids = [None] + [self.oracles[t].ltp(w, k) for t in range(1, n + 1)]
            for s in range(1, n + 1):
                u = calc.arena.parts(ids[s])
                for t in range(s, n + 1):
                    assert warp_function(calc, u, s, t, k, [ids[s]])[ids[s]] == ids[t]
                    count += 1
        return count

    def relevant(self) -> int:
        """Tuples away from the relevant region keep their type id."""
        count = 0
        for k in range(self.kmax + 1):
            regions = compute_relevant_regions(self.g, self.cs, 2 ** k)
            for reg in regions:
                s = reg.s
                o, o2 = self.oracles[s], self.oracles[s + 1]
                inside = set(reg.parts)
                for m, kk, w in self._all():
                    if kk != k or any(o.part_of[v] in inside for v in w):
                        continue
                    assert o.ltp(w, k) == o2.ltp(w, k)
                    count += 1
        return count

    def global_agreement(self) -> int:
        calc, count = self.calc, 0
        o = self.oracles[self.n]
        root = 2 * self.n - 1 if self.n > 1 else 1
        for m, k, w in self._all():
            assert to_global_type(calc.arena, o.ltp(w, k), root) == tp(self.g, w, k)
            count += 1
        return count

    def run(self) -> dict[str, int]:
        return {name: getattr(self, name)() for name in
                ("basic", "universes", "compositionality", "consistency", "warp", "relevant",
                 "global_agreement")}
