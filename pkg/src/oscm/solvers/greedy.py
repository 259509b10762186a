from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..core import BOrdering, Solution
from ..crossings import total_crossings
from .digraph import OrientationDigraph


def greedy_pair_order(matrix: np.ndarray) -> list[tuple[int, int]]:
    """Unordered pairs ``(u, v)``, ``u < v``, in processing order.

    Sorted by the exact ratio min/max of the two crossing numbers, ties by
    ``(u, v)``.  Pairs with both crossing numbers zero have no ratio and come
    last, in index order.
    """
    rows = matrix.tolist()
    n = len(rows)
    keyed = []
    degenerate = []
    for u in range(n):
        row_u = rows[u]
        for v in range(u + 1, n):
            cuv, cvu = row_u[v], rows[v][u]
            hi = max(cuv, cvu)
            if hi == 0:
                degenerate.append((u, v))
            else:
                keyed.append((Fraction(min(cuv, cvu), hi), u, v))
    keyed.sort()
    return [(u, v) for _, u, v in keyed] + degenerate


def greedy_digraph(matrix: np.ndarray) -> OrientationDigraph:
    rows = matrix.tolist()
    dag = OrientationDigraph(len(rows))
    for u, v in greedy_pair_order(matrix):
        if dag.related(u, v):
            continue
        if rows[u][v] <= rows[v][u]:
            dag.add_arc(u, v)
        else:
            dag.add_arc(v, u)
    return dag


def greedy(matrix: np.ndarray) -> Solution:
    """Orient pairs in order of increasing imbalance ratio, skipping implied ones."""
    dag = greedy_digraph(matrix)
    sigma = BOrdering(tuple(dag.topological_order()))
    return Solution(sigma, total_crossings(matrix, sigma))
