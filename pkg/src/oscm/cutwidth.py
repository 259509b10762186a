"""Linear cuts, edge lengths and LP-duality bounds on graph size."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .core import BipartiteInstance, FullOrdering, Graph

FEASIBILITY_SLACK = 1e-9


def _as_graph(g: Graph | BipartiteInstance) -> Graph:
    return g.to_graph() if isinstance(g, BipartiteInstance) else g


@dataclass(frozen=True)
class CutProfile:
    cuts: tuple[int, ...]

    @property
    def width(self) -> int:
        return max(self.cuts, default=0)

    @property
    def total(self) -> int:
        return sum(self.cuts)


@dataclass(frozen=True)
class EdgeLengthHistogram:
    """``m_ell[l-1]`` is the number of edges of length ``l`` for ``l = 1..n-1``."""

    m_ell: tuple[int, ...]

    def count(self, length: int) -> int:
        return self.m_ell[length - 1]

    @property
    def m(self) -> int:
        return sum(self.m_ell)

    @property
    def weighted_sum(self) -> int:
        return sum(l * c for l, c in enumerate(self.m_ell, start=1))


def cut_profile(graph: Graph | BipartiteInstance, pi: FullOrdering) -> CutProfile:
    """Sizes ``|E_1|, ..., |E_{n-1}|`` in one sweep over the ordering."""
    g = _as_graph(graph)
    if len(pi.order) != g.n:
        raise ValueError("ordering does not cover the graph's vertices")
    pos = pi.positions()
    delta = [0] * (g.n + 1)
    for u, v in g.edges:
        i, j = sorted((pos[u], pos[v]))
        delta[i] += 1
        delta[j] -= 1
    cuts = []
    running = 0
    for k in range(g.n - 1):
        running += delta[k]
        cuts.append(running)
    return CutProfile(tuple(cuts))


def cutwidth_of(graph: Graph | BipartiteInstance, pi: FullOrdering) -> int:
    return cut_profile(graph, pi).width


def edge_length_histogram(graph: Graph | BipartiteInstance, pi: FullOrdering) -> EdgeLengthHistogram:
    g = _as_graph(graph)
    pos = pi.positions()
    hist = [0] * max(g.n - 1, 0)
    for u, v in g.edges:
        hist[abs(pos[u] - pos[v]) - 1] += 1
    return EdgeLengthHistogram(tuple(hist))


def c_from_width(n: int, w: int) -> float | None:
    """Root ``c`` in (0, 1/2] of ``w = c(1-c) n^2``, or None if 4w > n^2."""
    if n <= 0 or w <= 0 or 4 * w > n * n:
        return None
    return (1 - math.sqrt(1 - 4 * w / (n * n))) / 2


def floor_cn(n: int, w: int) -> int:
    """Exact ``floor(c n)``: the largest ``k <= n/2`` with ``k (n-k) <= w``."""
    k = 0
    while k + 1 <= n // 2 and (k + 1) * (n - k - 1) <= w:
        k += 1
    return k


@dataclass(frozen=True)
class InequalityCheck:
    name: str
    lhs: int | float | Fraction
    rhs: int | float | Fraction
    holds: bool | None
    tight: bool = False
    note: str = ""


@dataclass
class LemmaReport:
    checks: list[InequalityCheck]

    @property
    def violations(self) -> list[InequalityCheck]:
        return [c for c in self.checks if c.holds is False]

    @property
    def ok(self) -> bool:
        return not self.violations


def lemma_checks(hist: EdgeLengthHistogram, profile: CutProfile, n: int, w: int | None = None) -> LemmaReport:
    """Evaluate both sides of the three edge-length inequalities."""
    if w is None:
        w = profile.width
    checks = []
    for length, count in enumerate(hist.m_ell, start=1):
        checks.append(InequalityCheck(f"lemma1[l={length}]", count, n - length,
                                      count <= n - length, count == n - length))
    s = hist.weighted_sum
    if s != profile.total:
        checks.append(InequalityCheck("cut-length identity", s, profile.total, False))
    checks.append(InequalityCheck("lemma2", s, (n - 1) * w, s <= (n - 1) * w, s == (n - 1) * w))

    c = c_from_width(n, w)
    if c is None or c * n < 1:
        checks.append(InequalityCheck("lemma3", s, float("nan"), None, note="inapplicable"))
        return LemmaReport(checks)
    k = floor_cn(n, w)
    head = 2 * sum(j * (n - j) for j in range(1, k + 1))
    exact_rhs = (n - 1 - 2 * k) * w + head
    checks.append(InequalityCheck("lemma3-floor", s, exact_rhs, s <= exact_rhs, s == exact_rhs))
    relaxed_rhs = (1 - 2 * c) * n * w + w + head
    checks.append(InequalityCheck("lemma3", s, relaxed_rhs,
                                  s <= relaxed_rhs * (1 + FEASIBILITY_SLACK) + FEASIBILITY_SLACK))
    return LemmaReport(checks)


@dataclass(frozen=True)
class DualCertificate:
    n: int
    w: int
    a: float
    d: int
    x: float
    y: tuple[float, ...]
    b: float
    objective: float

    def min_slack(self) -> float:
        """Smallest slack over all dual constraints (negative means infeasible)."""
        slacks = [self.x]
        for length, y_l in enumerate(self.y, start=1):
            slacks.append(y_l)
            slacks.append(y_l + length * self.x - 1)
        return min(slacks)

    @property
    def feasible(self) -> bool:
        return self.min_slack() >= -FEASIBILITY_SLACK and self.d <= self.n


def dual_certificate(n: int, w: int, a: float, b: float) -> DualCertificate:
    """Feasible dual solution ``x = a/sqrt(w)``, ``y_l = max(0, 1 - l x)`` style.

    The objective is summed directly, so it bounds ``sum m_l`` (and hence the
    size) for any graph whose weighted edge-length sum is at most ``b``.
    """
    if a <= 0:
        raise ValueError("a must be positive")
    if w < 1:
        raise ValueError("w must be at least 1")
    root = math.sqrt(w)
    d = math.ceil(root / a)
    # guard against ceil landing one short after rounding
    while d * a < root:
        d += 1
    if d > n:
        raise ValueError(f"d = {d} exceeds n = {n}; choose a larger a")
    x = a / root
    y = tuple(1 - length * a / root if length < d else 0.0 for length in range(1, n))
    objective = math.fsum((n - length) * y_l for length, y_l in enumerate(y, start=1)) + b * x
    cert = DualCertificate(n, w, a, d, x, y, float(b), objective)
    if cert.min_slack() < -FEASIBILITY_SLACK:
        raise AssertionError("constructed dual solution is infeasible")
    return cert


def f_coefficient(c: float) -> float:
    """Leading coefficient of the dense size bound (at ``a = 1/2``)."""
    r = math.sqrt(c * (1 - c))
    return c * (4 * c * c + 4 * c * r - 12 * c - 4 * r + 9) / (6 * r)


def dense_coefficient(c: float, a: float, sign: int = -1) -> float:
    """``C'/(2a) + C a / C' + sign * C'^2 / (6 a^2)`` with ``C' = sqrt(c(1-c))``."""
    r = math.sqrt(c * (1 - c))
    big_c = (4 * c**3 - 6 * c**2 + 3 * c) / 3
    return r / (2 * a) + big_c * a / r + sign * r * r / (6 * a * a)


def _golden_section(func, lo: float, hi: float, rel_tol: float = 1e-9) -> float:
    inv_phi = (math.sqrt(5) - 1) / 2
    x1 = hi - inv_phi * (hi - lo)
    x2 = lo + inv_phi * (hi - lo)
    f1, f2 = func(x1), func(x2)
    while hi - lo > rel_tol * max(1.0, abs(lo) + abs(hi)):
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - inv_phi * (hi - lo)
            f1 = func(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + inv_phi * (hi - lo)
            f2 = func(x2)
    return (lo + hi) / 2


def optimize_a(c: float, sign: int = -1, a_min: float = 0.05, a_max: float = 2.0,
               grid: int = 400) -> tuple[float, float]:
    """Minimize the dense coefficient over ``a``; returns ``(a*, g(c))``.

    The search starts at ``max(a_min, sqrt(c(1-c)))`` because smaller ``a``
    makes ``d = ceil(sqrt(w)/a)`` exceed ``n``.  A coarse grid locates the
    basin, golden-section search refines it.
    """
    if not 0 < c <= 0.5:
        raise ValueError("c must lie in (0, 1/2]")
    lo = max(a_min, math.sqrt(c * (1 - c)))
    func = lambda a: dense_coefficient(c, a, sign)
    step = (a_max - lo) / grid
    points = [lo + i * step for i in range(grid + 1)]
    best = min(range(grid + 1), key=lambda i: func(points[i]))
    left = points[max(best - 1, 0)]
    right = points[min(best + 1, grid)]
    a_star = _golden_section(func, left, right)
    candidates = [(func(a_star), a_star), (func(points[best]), points[best])]
    value, a_star = min(candidates)
    return a_star, value


@dataclass(frozen=True)
class SizeBound:
    mode: str
    bound: float
    leading_term: float
    certificate: DualCertificate
    c: float | None = None


def lemma3_sum_bound(n: int, w: int) -> int:
    """Integer bound on ``sum l m_l``: small cuts near both ends, ``w`` elsewhere."""
    k = floor_cn(n, w)
    return (n - 1 - 2 * k) * w + 2 * sum(j * (n - j) for j in range(1, k + 1))


def size_bound(n: int, w: int, mode: str = "sparse") -> SizeBound:
    """Certified upper bound on the size of any graph of order ``n`` and cutwidth ``w``."""
    if mode == "sparse":
        a = 1 / math.sqrt(2)
        cert = dual_certificate(n, w, a, (n - 1) * w)
        return SizeBound(mode, cert.objective, n * math.sqrt(2 * w), cert)
    if mode == "dense":
        c = c_from_width(n, w)
        if c is None or c * n < 1:
            raise ValueError("dense mode needs 4w <= n^2 and c n >= 1")
        cert = dual_certificate(n, w, 0.5, lemma3_sum_bound(n, w))
        return SizeBound(mode, cert.objective, f_coefficient(c) * n * n, cert, c)
    raise ValueError(f"unknown mode {mode!r}")


def exact_cutwidth(graph: Graph | BipartiteInstance, limit: int = 10) -> tuple[int, FullOrdering]:
    """Minimum cutwidth over all orderings, with a witness.

    Dynamic program over vertex subsets: the cut after a prefix only depends
    on the prefix set, so the best max-cut of a prefix set is a min over its
    last vertex.
    """
    g = _as_graph(graph)
    n = g.n
    if n > limit:
        raise ValueError(f"exact cutwidth limited to n <= {limit}, got {n}")
    if n <= 1:
        return 0, FullOrdering.identity(n)
    nbr = [0] * n
    for u, v in g.edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    full = (1 << n) - 1
    cut = [0] * (1 << n)
    best = [0] * (1 << n)
    last = [-1] * (1 << n)
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        rest = mask ^ (1 << low)
        # moving `low` into the prefix: its edges to the prefix leave the cut
        inside = bin(nbr[low] & rest).count("1")
        cut[mask] = cut[rest] + bin(nbr[low]).count("1") - 2 * inside
        value = None
        bits = mask
        while bits:
            v = (bits & -bits).bit_length() - 1
            bits &= bits - 1
            cand = best[mask ^ (1 << v)]
            if value is None or cand < value:
                value, last[mask] = cand, v
        best[mask] = max(value, cut[mask]) if mask != full else value
    order = []
    mask = full
    while mask:
        v = last[mask]
        order.append(v)
        mask ^= 1 << v
    order.reverse()
    return best[full], FullOrdering(tuple(order))


def brute_force_cutwidth(graph: Graph | BipartiteInstance) -> int:
    g = _as_graph(graph)
    if g.n <= 1:
        return 0
    return min(cut_profile(g, FullOrdering(p)).width for p in permutations(range(g.n)))
