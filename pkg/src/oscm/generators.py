"""Instance families: extremal constructions, string instances, random corpora."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .core import BipartiteInstance, FullOrdering, Graph
from .crossings import crossing_matrix
from .cutwidth import cutwidth_of
from .reductions import classify_pairs, theorem2_bound

PHI = (1 + math.sqrt(5)) / 2


class GenerationError(RuntimeError):
    """A construction failed its own generation-time check."""


def bandwidth_graph(n: int, k: int) -> tuple[Graph, FullOrdering]:
    """Vertices ``0..n-1`` with an edge between every two at distance ``<= k``."""
    if not 1 <= k < n:
        raise ValueError("need 1 <= k < n")
    edges = tuple((i, j) for i in range(n) for j in range(i + 1, min(n, i + k + 1)))
    return Graph(n, edges), FullOrdering.identity(n)


def unsuited_extremal(n_b: int, w: int, verify: bool = True) -> tuple[BipartiteInstance, FullOrdering]:
    """Two offset matchings attaining the unsuited-pair bound.

    A has ``n_b + w - 1`` vertices; B-vertex ``i`` sees A-positions ``i`` and
    ``i + w`` (the last B-vertex only the first).  Both sides are centred on a
    common axis with unit spacing, and the full ordering reads them off left
    to right (B first on ties).
    """
    if w < 2 or n_b < w:
        raise ValueError("need w >= 2 and n_b >= w")
    n_a = n_b + w - 1
    adj = tuple((i, i + w) if i < n_b - 1 else (i,) for i in range(n_b))
    instance = BipartiteInstance(n_a, n_b, adj)
    # doubled coordinates keep everything integral
    keyed = [(2 * a - (n_a - 1), 1, a) for a in range(n_a)]
    keyed += [(2 * b - (n_b - 1), 0, n_a + b) for b in range(n_b)]
    ordering = FullOrdering(tuple(v for _, _, v in sorted(keyed)))
    if verify:
        width = cutwidth_of(instance, ordering)
        unsuited = len(classify_pairs(crossing_matrix(instance)).unsuited)
        expected = theorem2_bound(n_b, w)
        if width != w or unsuited != expected:
            raise GenerationError(
                f"unsuited_extremal({n_b}, {w}): cutwidth {width}, {unsuited} unsuited "
                f"pairs, expected cutwidth {w} and {expected}")
    return instance, ordering


@dataclass(frozen=True)
class TwoPointProfile:
    """Where the outer vertices' neighbors sit relative to the middle vertex.

    Gap ``g`` (0..d) is the slot with ``g`` neighbors of the middle vertex to
    its left.  ``v3`` puts ``a_p`` neighbors in gap ``p`` and ``a_q`` in gap
    ``q``; ``v1`` counts gaps from the right, ``b_s`` neighbors in right-gap
    ``s`` and ``b_t`` in right-gap ``t``.
    """

    d: int
    p: int
    q: int
    s: int
    t: int
    a_p: int
    a_q: int
    b_s: int
    b_t: int


@dataclass(frozen=True)
class GoldenConfig:
    instance: BipartiteInstance
    triple: tuple[int, int, int]
    profile: TwoPointProfile


def golden_ratio_config(d: int) -> GoldenConfig:
    """Three B-vertices with disjoint neighborhoods whose ratios approach phi - 1.

    Discretizes the two-point minimizer with ``q = t = d``: B-vertex 1 (the
    middle one) has ``d`` neighbors; B-vertex 2 splits its ``d`` neighbors
    between gap ``round(d - d/phi)`` and the far right; B-vertex 0 splits its
    neighbors the same way between right-gap ``round(d/phi)`` and the far left.
    """
    if d < 5:
        raise ValueError("d must be at least 5")
    target = d / PHI
    p = round(d - target)
    # when this rounds up past d/phi, all of v1's mass lands on s (b_t = 0)
    s = round(target)
    q = t = d
    # the continuous mass at s is ~1, so rounding may overshoot d
    a_p = min(d, max(0, round((q - target) / (q - p) * d)))
    b_s = min(d, max(0, round((t - target) / (t - s) * d)))
    a_q, b_t = d - a_p, d - b_s
    if min(a_p, a_q, b_s, b_t) < 0:
        raise GenerationError(f"negative multiplicity for d={d}")
    profile = TwoPointProfile(d, p, q, s, t, a_p, a_q, b_s, b_t)

    v3_gap = [0] * (d + 1)
    v1_gap = [0] * (d + 1)
    v3_gap[p] += a_p
    v3_gap[q] += a_q
    v1_gap[d - s] += b_s
    v1_gap[d - t] += b_t
    n1, n2, n3 = [], [], []
    pos = 0
    for g in range(d + 1):
        # v3 before v1 inside a shared gap keeps c(v3, v1) minimal
        for _ in range(v3_gap[g]):
            n3.append(pos)
            pos += 1
        for _ in range(v1_gap[g]):
            n1.append(pos)
            pos += 1
        if g < d:
            n2.append(pos)
            pos += 1
    instance = BipartiteInstance(pos, 3, (tuple(n1), tuple(n2), tuple(n3)))
    return GoldenConfig(instance, (0, 1, 2), profile)


def from_string(s: str) -> tuple[BipartiteInstance, dict[str, int]]:
    """Position ``i`` of ``s`` is an A-vertex joined to the B-vertex of ``s[i]``.

    B-vertices are the distinct characters in sorted order; the returned map
    sends each character to its B-index.
    """
    if not s:
        raise ValueError("string must be nonempty")
    alphabet = sorted(set(s))
    index = {ch: i for i, ch in enumerate(alphabet)}
    rows: list[list[int]] = [[] for _ in alphabet]
    for pos, ch in enumerate(s):
        rows[index[ch]].append(pos)
    return BipartiteInstance(len(s), len(alphabet), tuple(tuple(r) for r in rows)), index


def count_ordered_occurrences(s: str, first: str, second: str) -> int:
    """Number of index pairs ``i < j`` with ``s[i] == first`` and ``s[j] == second``."""
    seen = 0
    total = 0
    for ch in s:
        if ch == second:
            total += seen
        if ch == first:
            seen += 1
    return total


def random_bipartite(n_a: int, n_b: int, m: int, seed: int) -> BipartiteInstance:
    """Uniform simple bipartite graph with exactly ``m`` edges."""
    if n_a < 0 or n_b < 0 or not 0 <= m <= n_a * n_b:
        raise ValueError("need 0 <= m <= n_a * n_b")
    rng = random.Random(seed)
    cells = rng.sample(range(n_a * n_b), m)
    return BipartiteInstance.from_edges(n_a, n_b, ((c % n_a, c // n_a) for c in cells))


def random_interleaving(instance: BipartiteInstance, rng: random.Random) -> FullOrdering:
    """Random full ordering that keeps A in its fixed order."""
    n = instance.n
    b_slots = set(rng.sample(range(n), instance.n_b))
    b_seq = list(range(instance.n_b))
    rng.shuffle(b_seq)
    order = []
    a_next = 0
    b_iter = iter(b_seq)
    for slot in range(n):
        if slot in b_slots:
            order.append(instance.n_a + next(b_iter))
        else:
            order.append(a_next)
            a_next += 1
    return FullOrdering(tuple(order))
