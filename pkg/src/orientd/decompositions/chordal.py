"""Chordal graph recognition and clique trees."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import DecompositionError
from ..graph import Graph
from .treedecomp import TreeDecomposition, elimination_td


@dataclass(frozen=True)
class EliminationOrdering:
    order: tuple

    @property
    def position(self) -> dict:
        return {v: i for i, v in enumerate(self.order)}


def mcs_order(g: Graph) -> list[int]:
    """Maximum cardinality search visit order (ties to lowest id)."""
    weight = [0] * g.n
    visited = [False] * g.n
    order = []
    for _ in range(g.n):
        best = -1
        for v in range(g.n):
            if not visited[v] and (best < 0 or weight[v] > weight[best]):
                best = v
        visited[best] = True
        order.append(best)
        for u in g.neighbors(best):
            if not visited[u]:
                weight[u] += 1
    return order


def is_peo(g: Graph, order) -> bool:
    """Each vertex's later neighbours must form a clique."""
    pos = {v: i for i, v in enumerate(order)}
    if sorted(pos) != list(range(g.n)):
        return False
    for v in range(g.n):
        later = [u for u in g.neighbors(v) if pos[u] > pos[v]]
        if not later:
            continue
        p = min(later, key=pos.__getitem__)
        pn = set(g.neighbors(p))
        if any(u != p and u not in pn for u in later):
            return False
    return True


def chordal_peo(g: Graph) -> EliminationOrdering | None:
    """A perfect elimination ordering, or None when ``g`` is not chordal."""
    order = mcs_order(g)[::-1]
    return EliminationOrdering(tuple(order)) if is_peo(g, order) else None


def is_chordal(g: Graph) -> bool:
    return chordal_peo(g) is not None


def clique_tree(g: Graph, peo: EliminationOrdering | None = None) -> TreeDecomposition:
    """Tree decomposition whose bags are the maximal cliques of a chordal graph."""
    if peo is None:
        peo = chordal_peo(g)
        if peo is None:
            raise DecompositionError("graph is not chordal")
    if not is_peo(g, peo.order):
        raise DecompositionError("ordering is not a perfect elimination ordering")
    return elimination_td(g, peo.order, contract=True)


def max_clique_size(g: Graph) -> int:
    """Clique number via a PEO when chordal, else by exhaustive search."""
    if g.n == 0:
        return 0
    peo = chordal_peo(g)
    if peo is not None:
        pos = peo.position
        return 1 + max(sum(1 for u in g.neighbors(v) if pos[u] > pos[v]) for v in range(g.n))
    best = 1
    nbrs = [set(g.neighbors(v)) for v in range(g.n)]

    def grow(clique_size, candidates):
        nonlocal best
        best = max(best, clique_size)
        cands = sorted(candidates)
        for i, v in enumerate(cands):
            if clique_size + len(cands) - i <= best:
                return
            grow(clique_size + 1, set(cands[i + 1:]) & nbrs[v])

    grow(0, set(range(g.n)))
    return best
