"""Bounded search tree for instances beyond exhaustive range.

Any vertex set R with |E(R)| > c(R) must lose a vertex, so we branch on
the members of a small such set. Disjoint overloaded sets give a lower
bound used for pruning. The search is exact; it only helps with speed.
"""

from __future__ import annotations

from ..errors import SolverError
from ..graph import CapacitatedInstance
from ..orientation import Orientation, orient_or_violator
from .result import SolveResult, decided


class _Search:
    def __init__(self, inst: CapacitatedInstance, node_limit: int | None):
        self.inst = inst
        g = inst.graph
        self.nbrs = [set(g.neighbors(v)) for v in range(g.n)]
        self.caps = inst.capacities
        self.nodes = 0
        self.node_limit = node_limit

    def _orient(self, removed: frozenset):
        g = self.inst.graph
        keep = [v for v in range(g.n) if v not in removed]
        sub, _ = g.induced(keep)
        o, bad = orient_or_violator(sub, [self.caps[v] for v in keep])
        if o is not None:
            return Orientation(g.n, tuple((keep[t], keep[h]) for t, h in o.arcs)), None
        return None, frozenset(keep[x] for x in bad)

    def shrink(self, r: frozenset, forbidden: frozenset) -> frozenset:
        """Drop vertices while the set stays overloaded; free vertices go first."""
        r = set(r)
        inner = {v: len(self.nbrs[v] & r) for v in r}
        surplus = sum(inner.values()) // 2 - sum(self.caps[v] for v in r)
        changed = True
        while changed:
            changed = False
            for v in sorted(r, key=lambda x: (x in forbidden, inner[x] - self.caps[x], x)):
                if surplus - inner[v] + self.caps[v] > 0:
                    surplus += self.caps[v] - inner[v]
                    r.discard(v)
                    for u in self.nbrs[v] & r:
                        inner[u] -= 1
                    del inner[v]
                    changed = True
                    break
        return frozenset(r)

    def lower_bound(self, removed: frozenset, forbidden: frozenset) -> int:
        count = 0
        gone = removed
        while True:
            o, bad = self._orient(gone)
            if o is not None:
                return count
            bad = self.shrink(bad, forbidden)
            if bad <= forbidden:
                return 10 ** 9
            count += 1
            gone = gone | bad

    def greedy(self) -> tuple[frozenset, Orientation]:
        removed = frozenset()
        while True:
            o, bad = self._orient(removed)
            if o is not None:
                return removed, o
            bad = self.shrink(bad, frozenset())
            v = max(bad, key=lambda x: (len(self.nbrs[x] - removed) - self.caps[x], -x))
            removed = removed | {v}

    def run(self, cutoff: int | None):
        best_set, best_o = self.greedy()
        best = len(best_set)
        if cutoff is not None and best > cutoff + 1:
            best, best_set, best_o = cutoff + 1, None, None

        def dfs(removed: frozenset, forbidden: frozenset):
            nonlocal best, best_set, best_o
            self.nodes += 1
            if self.node_limit is not None and self.nodes > self.node_limit:
                raise SolverError("search node limit exceeded")
            o, bad = self._orient(removed)
            if o is not None:
                if len(removed) < best:
                    best, best_set, best_o = len(removed), removed, o
                return
            if len(removed) + 1 >= best:
                return
            if len(removed) + self.lower_bound(removed, forbidden) >= best:
                return
            bad = self.shrink(bad, forbidden)
            free = sorted(bad - forbidden, key=lambda x: (-len(self.nbrs[x] - removed), x))
            for i, v in enumerate(free):
                dfs(removed | {v}, forbidden | frozenset(free[:i]))

        dfs(frozenset(), frozenset())
        return best_set, best_o


def branch_and_bound(inst: CapacitatedInstance, budget: int | None = None, node_limit: int | None = None) -> SolveResult:
    """Exact optimum by violator branching with packing lower bounds."""
    budget = inst.budget if budget is None else budget
    s = _Search(inst, node_limit)
    best_set, best_o = s.run(budget)
    if best_set is None:
        return decided(None, (), None, budget, "search", stats={"nodes": s.nodes})
    return decided(len(best_set), best_set, best_o, budget, "search", stats={"nodes": s.nodes})
