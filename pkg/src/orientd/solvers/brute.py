"""Exhaustive search over deletion sets, the global oracle.

Sets are tried by increasing size and lexicographically within a size, so
the first feasible set is the lexicographically smallest minimum solution.
Each failed flow yields an overloaded vertex set that every solution must
hit; sets missing a known one are skipped without a flow call. This never
changes which set is found first.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterator

from ..errors import GuardError
from ..graph import CapacitatedInstance, Graph
from ..orientation import Orientation, orient_or_violator
from .result import SolveResult, decided

DEFAULT_GUARD = 22


def _residual_check(inst: CapacitatedInstance, deleted):
    g = inst.graph
    keep = [v for v in range(g.n) if v not in deleted]
    sub, _ = g.induced(keep)
    o, bad = orient_or_violator(sub, [inst.capacities[v] for v in keep])
    if o is not None:
        return Orientation(g.n, tuple((keep[t], keep[h]) for t, h in o.arcs)), None
    return None, frozenset(keep[x] for x in bad)


class _Enumerator:
    def __init__(self, inst: CapacitatedInstance):
        self.inst = inst
        self.violators: list[frozenset] = []
        self.flow_calls = 0

    def test(self, subset: frozenset):
        for r in self.violators:
            if not r & subset:
                return None
        self.flow_calls += 1
        o, bad = _residual_check(self.inst, subset)
        if o is None:
            self.violators.append(bad)
        return o

    def of_size(self, size: int) -> Iterator[tuple[frozenset, Orientation]]:
        for combo in combinations(range(self.inst.n), size):
            s = frozenset(combo)
            o = self.test(s)
            if o is not None:
                yield s, o


def _guard(inst: CapacitatedInstance, guard: int | None) -> None:
    limit = DEFAULT_GUARD if guard is None else guard
    if limit >= 0 and inst.n > limit:
        raise GuardError(
            f"exhaustive search refused: n={inst.n} exceeds guard {limit} (raise --guard to override)"
        )


def brute_force(inst: CapacitatedInstance, guard: int | None = None, budget: int | None = None) -> SolveResult:
    """Minimum deletion set by exhaustive search (guard < 0 disables the size check)."""
    _guard(inst, guard)
    budget = inst.budget if budget is None else budget
    en = _Enumerator(inst)
    top = inst.n if budget is None else min(inst.n, budget)
    for size in range(top + 1):
        for s, o in en.of_size(size):
            return decided(size, s, o, budget, "brute", stats={"flow_calls": en.flow_calls})
    return decided(None, (), None, budget, "brute", stats={"flow_calls": en.flow_calls})


def all_minimum_solutions(inst: CapacitatedInstance, guard: int | None = None) -> tuple[int, list[frozenset]]:
    """The optimum and every deletion set attaining it, in lexicographic order."""
    _guard(inst, guard)
    en = _Enumerator(inst)
    for size in range(inst.n + 1):
        found = [s for s, _ in en.of_size(size)]
        if found:
            return size, found
    raise AssertionError("deleting every vertex is always feasible")


def min_vertex_cover(g: Graph) -> int:
    """Exhaustive minimum vertex cover size (independent of the flow code)."""
    for size in range(g.n + 1):
        for combo in combinations(range(g.n), size):
            s = set(combo)
            if all(u in s or v in s for u, v in g.edges):
                return size
    return g.n


def independence_number(g: Graph) -> int:
    for size in range(g.n, -1, -1):
        for combo in combinations(range(g.n), size):
            if all(not g.has_edge(u, v) for u, v in combinations(combo, 2)):
                return size
    return 0


def domination_number(g: Graph) -> int:
    closed = [set(g.neighbors(v)) | {v} for v in range(g.n)]
    for size in range(g.n + 1):
        for combo in combinations(range(g.n), size):
            covered = set()
            for v in combo:
                covered |= closed[v]
            if len(covered) == g.n:
                return size
    return g.n
