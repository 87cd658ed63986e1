"""Strategy selection and the chordal solver."""

from __future__ import annotations

import logging

from ..decompositions.chordal import chordal_peo, clique_tree, max_clique_size
from ..decompositions.treedecomp import make_nice, min_fill_td, validate_td
from ..errors import DecompositionError, SolverError, ValidationError
from ..graph import CapacitatedInstance
from .brute import DEFAULT_GUARD, brute_force
from .cw_dp import cw_dp
from .result import SolveResult
from .tw_dp import tw_dp

log = logging.getLogger(__name__)

SMALL_N = 12
STRATEGIES = ("auto", "brute", "tw", "cw", "chordal")


def chordal_solve(inst: CapacitatedInstance, k: int | None = None) -> SolveResult:
    """Decide/solve a chordal instance with budget ``k`` via its clique tree.

    A clique on 2d+k+2 vertices cannot be repaired with k deletions, so
    such inputs are rejected before any table is built.
    """
    g = inst.graph
    peo = chordal_peo(g)
    if peo is None:
        raise ValidationError("graph is not chordal; use tw_dp with a min-fill decomposition")
    k = inst.budget if k is None else k
    omega = max_clique_size(g)
    if k is not None and omega >= 2 * inst.d + k + 2:
        log.info("clique of size %d rejects budget %d", omega, k)
        return SolveResult(None, frozenset(), None, False, k, "chordal-precheck", True,
                           {"omega": omega})
    td = clique_tree(g, peo)
    res = tw_dp(inst, make_nice(td), budget=k)
    return SolveResult(res.optimum, res.deletion, res.orientation, res.feasible, k, "chordal",
                       res.witness_complete, {**res.stats, "omega": omega})


def solve(inst: CapacitatedInstance, strategy: str = "auto", td=None, expr=None,
          threshold="default", guard: int | None = None, budget: int | None = None) -> SolveResult:
    """Route to an exact solver; never approximates.

    With both a decomposition and an expression, both DPs run and must agree.
    """
    if strategy not in STRATEGIES:
        raise ValidationError(f"unknown strategy {strategy!r}")
    budget = inst.budget if budget is None else budget
    if strategy == "cw" and expr is None:
        raise ValidationError("strategy 'cw' needs a clique-width expression")
    if strategy == "brute":
        return brute_force(inst, guard=guard, budget=budget)
    if strategy == "chordal":
        return chordal_solve(inst, budget)
    if td is not None:
        verdict = validate_td(inst.graph, td)
        if not verdict:
            raise DecompositionError(f"invalid decomposition: {verdict.message}")
    if strategy == "auto" and td is not None and expr is not None:
        a = tw_dp(inst, make_nice(td), budget=budget)
        b = cw_dp(inst, expr, threshold=threshold, budget=budget)
        if (a.feasible, a.optimum) != (b.feasible, b.optimum):
            raise SolverError(f"decomposition DP ({a.optimum}) and expression DP ({b.optimum}) disagree")
        return a
    if strategy == "cw" or (strategy == "auto" and expr is not None):
        return cw_dp(inst, expr, threshold=threshold, budget=budget)
    if strategy == "tw" or td is not None:
        return tw_dp(inst, make_nice(td if td is not None else min_fill_td(inst.graph)), budget=budget)
    if chordal_peo(inst.graph) is not None:
        return chordal_solve(inst, budget)
    limit = DEFAULT_GUARD if guard is None else guard
    if inst.n <= min(SMALL_N, limit if limit >= 0 else SMALL_N):
        return brute_force(inst, guard=guard, budget=budget)
    return tw_dp(inst, make_nice(min_fill_td(inst.graph)), budget=budget)
