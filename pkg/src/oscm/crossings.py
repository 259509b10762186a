"""Crossing numbers, the objective and the pairwise lower bound."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .core import BipartiteInstance, BOrdering

MAX_DENSE_B = 20000


class MatrixTooLarge(ValueError):
    pass


def crossing_number(instance: BipartiteInstance, u: int, v: int) -> int:
    """Crossings between edges at ``u`` and edges at ``v`` when ``u`` precedes ``v``.

    Counts pairs ``(x, y)`` in ``N(u) x N(v)`` with ``x > y`` by merging the
    two sorted neighbor lists.
    """
    if u == v:
        raise ValueError("crossing number needs two distinct B-vertices")
    nu, nv = instance.adj[u], instance.adj[v]
    total = 0
    j = 0
    for x in nu:
        while j < len(nv) and nv[j] < x:
            j += 1
        total += j
    return total


def crossing_number_quadratic(instance: BipartiteInstance, u: int, v: int) -> int:
    if u == v:
        raise ValueError("crossing number needs two distinct B-vertices")
    return sum(1 for x in instance.adj[u] for y in instance.adj[v] if x > y)


def _fill_rows(rows, adj, edge_b, edge_a, n_b, out):
    for u in rows:
        xs = adj[u]
        if not len(xs) or not len(edge_a):
            continue
        # for each edge (v, y): number of x in N(u) with x > y
        above = len(xs) - np.searchsorted(xs, edge_a, side="right")
        out[u] = np.bincount(edge_b, weights=above, minlength=n_b).astype(np.int64)
        out[u, u] = 0


def crossing_matrix(instance: BipartiteInstance, threads: int = 1,
                    max_b: int = MAX_DENSE_B) -> np.ndarray:
    """Dense ``n_b x n_b`` int64 matrix with ``c[u, v]`` the crossing number.

    Rows are independent, so ``threads > 1`` gives bit-identical results.
    """
    n_b = instance.n_b
    if n_b > max_b:
        raise MatrixTooLarge(f"n_b = {n_b} exceeds the dense matrix limit {max_b}")
    c = np.zeros((n_b, n_b), dtype=np.int64)
    adj = [np.asarray(row, dtype=np.int64) for row in instance.adj]
    edges = instance.edges()
    edge_a = np.fromiter((a for a, _ in edges), dtype=np.int64, count=len(edges))
    edge_b = np.fromiter((b for _, b in edges), dtype=np.int64, count=len(edges))
    if threads <= 1 or n_b < 2 * threads:
        _fill_rows(range(n_b), adj, edge_b, edge_a, n_b, c)
    else:
        chunks = [range(i, n_b, threads) for i in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(lambda rows: _fill_rows(rows, adj, edge_b, edge_a, n_b, c), chunks))
    return c


def common_neighbors(instance: BipartiteInstance, u: int, v: int) -> int:
    return len(set(instance.adj[u]) & set(instance.adj[v]))


def total_crossings(matrix: np.ndarray, sigma: BOrdering) -> int:
    """Objective value: sum of ``c[u, v]`` over pairs with ``u`` before ``v``."""
    idx = np.asarray(sigma.seq, dtype=np.int64)
    if len(idx) != matrix.shape[0]:
        raise ValueError("ordering size does not match the matrix")
    if len(idx) < 2:
        return 0
    permuted = matrix[np.ix_(idx, idx)]
    return int(np.triu(permuted, k=1).sum())


class FenwickTree:
    """Counts over ``0..size-1`` with O(log n) point update and prefix query."""

    def __init__(self, size: int):
        self.size = size
        self._tree = [0] * (size + 1)

    def add(self, index: int, delta: int = 1) -> None:
        i = index + 1
        tree = self._tree
        while i <= self.size:
            tree[i] += delta
            i += i & -i

    def prefix(self, index: int) -> int:
        """Sum of entries ``0..index-1``."""
        total = 0
        i = index
        tree = self._tree
        while i > 0:
            total += tree[i]
            i -= i & -i
        return total


def total_crossings_by_inversions(instance: BipartiteInstance, sigma: BOrdering) -> int:
    """Objective via inversion counting in O(m log m), independent of the matrix.

    Edges sorted by (rank of B-endpoint, A-position); a crossing is a pair of
    edges whose A-positions are strictly inverted in that sequence.
    """
    if len(sigma) != instance.n_b:
        raise ValueError("ordering size does not match the instance")
    tree = FenwickTree(instance.n_a)
    seen = 0
    total = 0
    for b in sigma.seq:
        row = instance.adj[b]
        # earlier B-vertices only; edges at the same vertex never cross
        for a in row:
            total += seen - tree.prefix(a + 1)
        for a in row:
            tree.add(a)
        seen += len(row)
    return total


def crossing_lower_bound(matrix: np.ndarray) -> int:
    """Sum over unordered pairs of ``min(c[u, v], c[v, u])``."""
    if matrix.shape[0] < 2:
        return 0
    low = np.minimum(matrix, matrix.T)
    return int(np.triu(low, k=1).sum())
