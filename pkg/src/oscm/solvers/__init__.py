"""Greedy and exact solvers, plus the reduce-solve-lift pipeline."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from ..core import BipartiteInstance, Solution
from ..crossings import crossing_matrix, total_crossings_by_inversions
from ..reductions import ReductionPlan, classify_pairs, lift_solution, reduce
from .digraph import CycleError, OrientationDigraph
from .exact import BudgetExceeded, SearchStats, brute_force, exact_dp, exact_unsuited
from .greedy import greedy, greedy_digraph, greedy_pair_order

__all__ = [
    "BudgetExceeded", "CycleError", "OrientationDigraph", "SearchStats", "SolveReport",
    "brute_force", "exact_dp", "exact_unsuited", "greedy", "greedy_digraph",
    "greedy_pair_order", "solve",
]

log = logging.getLogger(__name__)

ALGORITHMS = ("greedy", "exact", "dp", "auto", "brute")


@dataclass
class SolveReport:
    solution: Solution
    algorithm: str
    plan: ReductionPlan
    n_unsuited: int
    stats: SearchStats = field(default_factory=SearchStats)


def solve(instance: BipartiteInstance, algo: str = "auto", *, branch_budget: int = 30,
          dp_limit: int = 24, time_limit: float | None = None, threads: int = 1) -> SolveReport:
    """Reduce, solve the reduced instance with ``algo``, lift back.

    ``auto`` picks the unsuited-pair search when few unsuited pairs remain,
    the subset DP for small B, and greedy otherwise.
    """
    if algo not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algo!r}")
    plan = reduce(instance)
    matrix = crossing_matrix(plan.reduced, threads=threads)
    classification = classify_pairs(matrix)
    n_unsuited = len(classification.unsuited)
    stats = SearchStats()
    chosen = algo
    if algo == "auto":
        if n_unsuited <= branch_budget:
            chosen = "exact"
        elif plan.reduced.n_b <= dp_limit:
            chosen = "dp"
        else:
            chosen = "greedy"
            log.warning("%d unsuited pairs and n_b=%d: falling back to greedy",
                        n_unsuited, plan.reduced.n_b)
    if chosen == "greedy":
        reduced_sol = greedy(matrix)
    elif chosen == "exact":
        reduced_sol = exact_unsuited(matrix, classification, budget=branch_budget,
                                     time_limit=time_limit, stats=stats)
    elif chosen == "dp":
        reduced_sol = exact_dp(matrix, limit=dp_limit)
    else:
        reduced_sol = brute_force(matrix)
    sigma = lift_solution(plan, reduced_sol.ordering)
    value = total_crossings_by_inversions(instance, sigma)
    return SolveReport(Solution(sigma, value), chosen, plan, n_unsuited, stats)
