"""Uniform-capacity transform: pad deficient vertices with saturated cliques.

A clique on 2d'+1 vertices with bound d' is exactly tight: every vertex
receives d' edges inside it. Linking d'-c(u) of its vertices to u forces
those edges into u, so u is left with room for exactly c(u) more.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import SolverError, ValidationError
from ..graph import CapacitatedInstance, Graph
from ..orientation import residual_orientation, verify_solution
from .result import SolveResult


@dataclass(frozen=True)
class SaturationMap:
    """Original vertices keep their ids; gadget cliques are appended after them."""

    original_n: int
    d_prime: int
    cliques: dict  # anchor -> tuple of clique vertex ids
    connectors: dict  # anchor -> tuple of the clique vertices linked to it

    def anchor_of(self) -> dict:
        return {x: u for u, verts in self.cliques.items() for x in verts}

    def to_text(self) -> str:
        lines = [f"c saturation map, bound {self.d_prime}"]
        for u in sorted(self.cliques):
            clique = " ".join(str(x + 1) for x in self.cliques[u])
            conn = " ".join(str(x + 1) for x in self.connectors[u])
            lines.append(f"clique {u + 1} {clique}")
            lines.append(f"connect {u + 1} {conn}".rstrip())
        return "\n".join(lines) + "\n"


def saturate(inst: CapacitatedInstance, d_prime: int) -> tuple[CapacitatedInstance, SaturationMap]:
    if d_prime < inst.d:
        raise ValidationError(f"target bound {d_prime} is below the instance bound {inst.d}")
    g = inst.graph
    edges = set(g.edges)
    n = g.n
    cliques, connectors = {}, {}
    size = 2 * d_prime + 1
    for u in range(g.n):
        deficit = d_prime - inst.capacities[u]
        if deficit <= 0:
            continue
        verts = tuple(range(n, n + size))
        n += size
        edges.update((a, b) for i, a in enumerate(verts) for b in verts[i + 1:])
        linked = verts[:deficit]
        edges.update((u, x) for x in linked)
        cliques[u] = verts
        connectors[u] = linked
    out = CapacitatedInstance(Graph(n, frozenset(edges)), d_prime, (d_prime,) * n, inst.budget)
    return out, SaturationMap(g.n, d_prime, cliques, connectors)


def lift_solution(result: SolveResult, smap: SaturationMap, original: CapacitatedInstance,
                  saturated: CapacitatedInstance | None = None) -> SolveResult:
    """Map a solution of the saturated instance back to the original.

    A deleted gadget vertex is exchanged for its anchor, which never
    increases the deletion count.
    """
    if not result.feasible:
        return result
    if saturated is not None:
        if result.orientation is None:
            raise SolverError("saturated solution carries no orientation")
        verdict = verify_solution(saturated.with_budget(None), result.deletion, result.orientation)
        if not verdict:
            raise SolverError(f"saturated solution is invalid: {verdict.message}")
    owner = smap.anchor_of()
    lifted = set()
    for x in result.deletion:
        if x < smap.original_n:
            lifted.add(x)
        elif x in owner:
            lifted.add(owner[x])
        else:
            raise SolverError(f"vertex {x + 1} is not part of the saturated instance")
    o = residual_orientation(original.with_budget(None), lifted)
    if o is None:
        raise SolverError("lifted deletion set is infeasible on the original instance")
    opt = len(lifted) if result.optimum is not None else None
    return SolveResult(opt, frozenset(lifted), o, True, result.budget, result.strategy + "+lift",
                       result.witness_complete)
