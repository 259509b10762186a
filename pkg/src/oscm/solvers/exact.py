"""Exact OSCM solvers.

``exact_unsuited`` fixes every suited pair in its natural ordering and
branches only on the orientation of unsuited pairs.  ``exact_dp`` is the
subset dynamic program, ``brute_force`` enumerates all orderings.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from ..core import BOrdering, Solution
from ..crossings import crossing_lower_bound, total_crossings
from ..reductions import PairClassification, classify_pairs
from .digraph import OrientationDigraph
from .greedy import greedy


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class SearchStats:
    nodes: int = 0
    prunes: int = 0
    leaves: int = 0
    elapsed: float = 0.0


def _forced_digraph(rows, classification: PairClassification):
    dag = OrientationDigraph(len(rows))
    excess = 0
    for u, v in sorted(classification.forced):
        if dag.reaches(u, v):
            continue
        for p, s in dag.add_arc(u, v):
            excess += rows[p][s] - min(rows[p][s], rows[s][p])
    return dag, excess


def exact_unsuited(matrix: np.ndarray, classification: PairClassification | None = None,
                   budget: int = 30, time_limit: float | None = None,
                   stats: SearchStats | None = None) -> Solution:
    """Branch and bound over the orientations of unsuited pairs.

    Lower bound at a node: cost of every pair already oriented (directly or
    through transitivity) plus the cheaper side of every open pair.
    """
    if classification is None:
        classification = classify_pairs(matrix)
    if len(classification.unsuited) > budget:
        raise BudgetExceeded(
            f"{len(classification.unsuited)} unsuited pairs exceed the budget of {budget}")
    stats = stats if stats is not None else SearchStats()
    start = time.perf_counter()
    rows = matrix.tolist()
    base = crossing_lower_bound(matrix)

    root, root_excess = _forced_digraph(rows, classification)
    pairs = sorted(classification.unsuited,
                   key=lambda p: (-abs(rows[p[0]][p[1]] - rows[p[1]][p[0]]), p))

    incumbent = greedy(matrix)
    best = [incumbent.crossings, incumbent.ordering.seq]

    def descend(dag: OrientationDigraph, excess: int, i: int) -> None:
        stats.nodes += 1
        if time_limit is not None and stats.nodes & 1023 == 1:
            if time.perf_counter() - start > time_limit:
                raise BudgetExceeded(f"time limit of {time_limit}s reached")
        if base + excess >= best[0]:
            stats.prunes += 1
            return
        while i < len(pairs) and dag.related(*pairs[i]):
            i += 1
        if i == len(pairs):
            stats.leaves += 1
            best[0] = base + excess
            best[1] = tuple(dag.topological_order())
            return
        u, v = pairs[i]
        first = (u, v) if rows[u][v] <= rows[v][u] else (v, u)
        for p, q in (first, first[::-1]):
            child = dag.copy()
            extra = 0
            for x, y in child.add_arc(p, q):
                extra += rows[x][y] - min(rows[x][y], rows[y][x])
            descend(child, excess + extra, i + 1)

    descend(root, root_excess, 0)
    stats.elapsed = time.perf_counter() - start
    sigma = BOrdering(best[1])
    value = total_crossings(matrix, sigma)
    if value != best[0]:
        raise AssertionError(f"search bookkeeping {best[0]} disagrees with objective {value}")
    return Solution(sigma, value)


def _subset_sums(block: np.ndarray) -> np.ndarray:
    """``out[s, v] = sum of block[u, v] over bits u of s``."""
    k = block.shape[0]
    out = np.zeros((1 << k, block.shape[1]), dtype=np.int64)
    for j in range(k):
        out[1 << j: 2 << j] = out[: 1 << j] + block[j]
    return out


def exact_dp(matrix: np.ndarray, limit: int = 24) -> Solution:
    """Subset DP: ``cost(S + v) = cost(S) + sum_{u in S} c[u, v]``.

    Processed in layers of equal popcount.  The inner sum is read from two
    half-size subset-sum tables (low bits and high bits of the mask).
    """
    n = matrix.shape[0]
    if n > limit:
        raise BudgetExceeded(f"n_b = {n} exceeds the DP limit of {limit}")
    if n == 0:
        return Solution(BOrdering(()), 0)
    half = n // 2
    low_table = _subset_sums(matrix[:half])
    high_table = _subset_sums(matrix[half:])
    low_mask = (1 << half) - 1

    size = 1 << n
    masks = np.arange(size, dtype=np.int64)
    popcount = np.bitwise_count(masks)
    del masks
    layers = np.argsort(popcount, kind="stable")
    bounds = np.cumsum(np.bincount(popcount, minlength=n + 1))
    dp = np.zeros(size, dtype=np.int64)
    parent = np.full(size, -1, dtype=np.int8)
    big = np.iinfo(np.int64).max

    for k in range(1, n + 1):
        layer = layers[bounds[k - 1]: bounds[k]]
        best = np.full(len(layer), big, dtype=np.int64)
        arg = np.full(len(layer), -1, dtype=np.int8)
        for v in range(n):
            idx = np.nonzero((layer >> v) & 1)[0]
            prev = layer[idx] ^ (1 << v)
            cand = dp[prev] + low_table[prev & low_mask, v] + high_table[prev >> half, v]
            better = cand < best[idx]
            hit = idx[better]
            best[hit] = cand[better]
            arg[hit] = v
        dp[layer] = best
        parent[layer] = arg

    seq = []
    mask = size - 1
    while mask:
        v = int(parent[mask])
        seq.append(v)
        mask ^= 1 << v
    seq.reverse()
    sigma = BOrdering(tuple(seq))
    return Solution(sigma, int(dp[size - 1]))


def brute_force(matrix: np.ndarray, limit: int = 9) -> Solution:
    """Enumerate every ordering of B (depth-first with prefix costs)."""
    n = matrix.shape[0]
    if n > limit:
        raise BudgetExceeded(f"brute force limited to n_b <= {limit}, got {n}")
    rows = matrix.tolist()
    best = [None, ()]
    prefix: list[int] = []
    used = [False] * n

    def extend(cost: int) -> None:
        if len(prefix) == n:
            if best[0] is None or cost < best[0]:
                best[0], best[1] = cost, tuple(prefix)
            return
        for v in range(n):
            if used[v]:
                continue
            add = sum(rows[u][v] for u in prefix)
            used[v] = True
            prefix.append(v)
            extend(cost + add)
            prefix.pop()
            used[v] = False

    extend(0)
    return Solution(BOrdering(best[1]), best[0] or 0)
