"""Common result record for all solvers."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..orientation import Orientation


@dataclass(frozen=True)
class SolveResult:
    """Outcome of an exact solve.

    ``optimum`` is None when the solver stopped without an exact value,
    for instance when the optimum exceeds the budget or a pre-check
    rejected the instance. ``feasible`` is the decision against
    ``budget`` (or simply whether a solution was found when no budget is set).
    """

    optimum: int | None
    deletion: frozenset = frozenset()
    orientation: Orientation | None = None
    feasible: bool = True
    budget: int | None = None
    strategy: str = ""
    witness_complete: bool = True
    stats: dict = field(default_factory=dict, compare=False)

    def result_line(self) -> str:
        if not self.feasible:
            return f"result infeasible {self.budget}"
        if self.budget is not None:
            return f"result feasible {len(self.deletion)}"
        return f"result optimum {self.optimum}"


def decided(optimum, deletion, orientation, budget, strategy, witness_complete=True, stats=None):
    """Build a result from an exact optimum (or None when over budget)."""
    if optimum is not None and budget is not None and optimum > budget:
        optimum = None
    feasible = optimum is not None
    return SolveResult(
        optimum=optimum,
        deletion=frozenset(deletion) if feasible else frozenset(),
        orientation=orientation if feasible else None,
        feasible=feasible,
        budget=budget,
        strategy=strategy,
        witness_complete=witness_complete if feasible else True,
        stats=stats or {},
    )
