"""Integer-exact checks of the cycle-ratio theorems and corpus-wide bound audits."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Iterable, Sequence

import numpy as np

from .core import BipartiteInstance, FullOrdering, Graph
from .crossings import crossing_matrix
from .cutwidth import (cut_profile, dual_certificate, edge_length_histogram,
                       lemma_checks)
from .reductions import classify_pairs, theorem2_bound, unsuited_bound

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CycleReport:
    vertices: tuple[int, ...]
    hypothesis_ok: bool
    satisfied: bool | None
    max_ratio: Fraction | None = None
    max_ratio_witness: int | None = None
    skipped_pairs: tuple[int, ...] = ()


def _max_ratio(terms: Sequence[tuple[int, int]]) -> tuple[Fraction | None, int | None]:
    best, where = None, None
    for i, (num, den) in enumerate(terms):
        if den == 0:
            continue
        r = Fraction(num, den)
        if best is None or r > best:
            best, where = r, i
    return best, where


def check_theorem3(matrix: np.ndarray, cycle: Sequence[int],
                   degrees: Sequence[int] | None = None) -> CycleReport:
    """Check ``exists i: (t-1) c[v_i, v_{i+1}] >= c[v_{i+1}, v_i]`` on a cycle.

    Only evaluated when ``c[v_i, v_{i+1}] <= c[v_{i+1}, v_i]`` holds all the
    way round.  Pairs with both entries zero (possible only for unreduced
    instances) carry no ratio and are skipped with a warning.
    """
    t = len(cycle)
    if t < 3:
        raise ValueError("cycle needs at least 3 vertices")
    if len(set(cycle)) != t:
        raise ValueError("cycle repeats a vertex")
    if degrees is not None and any(degrees[v] == 0 for v in cycle):
        raise ValueError("cycle vertex with empty neighborhood")
    cyc = tuple(int(v) for v in cycle)
    terms = [(int(matrix[cyc[i], cyc[(i + 1) % t]]), int(matrix[cyc[(i + 1) % t], cyc[i]]))
             for i in range(t)]
    if any(fwd > back for fwd, back in terms):
        return CycleReport(cyc, False, None)
    skipped = tuple(i for i, (_, back) in enumerate(terms) if back == 0)
    if skipped:
        log.debug("cycle %s: zero denominators at %s skipped", cyc, skipped)
    if len(skipped) == t:
        # every pair degenerate: nothing to evaluate
        return CycleReport(cyc, True, None, None, None, skipped)
    satisfied = any((t - 1) * fwd >= back for fwd, back in terms if back > 0)
    ratio, where = _max_ratio(terms)
    return CycleReport(cyc, True, satisfied, ratio, where, skipped)


@dataclass(frozen=True)
class TripleReport:
    triple: tuple[int, int, int]
    disjoint: bool
    hypothesis_ok: bool
    satisfied: bool | None
    max_ratio: Fraction | None = None
    witness: tuple[int, int] | None = None


def check_theorem4(matrix: np.ndarray, triple: Sequence[int],
                   instance: BipartiteInstance) -> TripleReport:
    """Golden-ratio test ``c_ij^2 + c_ij c_ji >= c_ji^2`` for some hypothesis pair.

    ``x^2 + x`` is increasing on ``x >= 0`` and equals 1 at ``phi - 1``, so the
    test is ``c_ij / c_ji >= phi - 1`` without irrational arithmetic.
    """
    v1, v2, v3 = (int(v) for v in triple)
    if len({v1, v2, v3}) != 3:
        raise ValueError("triple repeats a vertex")
    nbrs = [set(instance.adj[v]) for v in (v1, v2, v3)]
    if any(not nb for nb in nbrs):
        raise ValueError("triple vertex with empty neighborhood")
    disjoint = all(not (nbrs[i] & nbrs[j]) for i, j in ((0, 1), (1, 2), (0, 2)))
    if not disjoint:
        return TripleReport((v1, v2, v3), False, False, None)
    pairs = ((v1, v2), (v2, v3), (v3, v1))
    terms = [(int(matrix[i, j]), int(matrix[j, i])) for i, j in pairs]
    if any(fwd > back for fwd, back in terms):
        return TripleReport((v1, v2, v3), True, False, None)
    satisfied = any(fwd * fwd + fwd * back >= back * back for fwd, back in terms)
    ratio, where = _max_ratio(terms)
    return TripleReport((v1, v2, v3), True, True, satisfied, ratio, pairs[where])


@dataclass
class CycleStats:
    """Summary of a cycle scan.  ``min_max_ratio`` is an empirical upper
    estimate of the best constant for this ``t``, never a proven bound."""

    t: int
    exhaustive: bool
    seed: int | None = None
    examined: int = 0
    hypothesis_count: int = 0
    violations: list[tuple[int, ...]] = field(default_factory=list)
    skipped: int = 0
    golden_checked: int = 0
    golden_violations: list[tuple[int, ...]] = field(default_factory=list)
    min_max_ratio: Fraction | None = None
    argmin: tuple[int, ...] | None = None


def _cycles(n: int, t: int):
    # fix the smallest vertex first so each directed cycle appears once
    for first in range(n):
        for rest in permutations(range(first + 1, n), t - 1):
            yield (first,) + rest


def scan_cycles(instance: BipartiteInstance, t: int, budget: int = 10000, seed: int = 0,
                matrix: np.ndarray | None = None) -> CycleStats:
    """Evaluate every (t <= 4) or ``budget`` sampled hypothesis-satisfying cycles."""
    if matrix is None:
        matrix = crossing_matrix(instance)
    candidates = [b for b in range(instance.n_b) if instance.adj[b]]
    exhaustive = t <= 4
    stats = CycleStats(t, exhaustive, None if exhaustive else seed)
    if len(candidates) < t:
        return stats
    if exhaustive:
        source: Iterable[tuple[int, ...]] = (
            tuple(candidates[i] for i in cyc) for cyc in _cycles(len(candidates), t))
    else:
        rng = random.Random(seed)
        source = (tuple(rng.sample(candidates, t)) for _ in range(budget))
    for cyc in source:
        stats.examined += 1
        report = check_theorem3(matrix, cyc)
        if not report.hypothesis_ok:
            continue
        stats.hypothesis_count += 1
        if report.skipped_pairs:
            stats.skipped += 1
        if report.satisfied is False:
            stats.violations.append(cyc)
        if report.max_ratio is not None and (
                stats.min_max_ratio is None or report.max_ratio < stats.min_max_ratio):
            stats.min_max_ratio, stats.argmin = report.max_ratio, cyc
        if t == 3:
            golden = check_theorem4(matrix, cyc, instance)
            if golden.hypothesis_ok:
                stats.golden_checked += 1
                if not golden.satisfied:
                    stats.golden_violations.append(cyc)
    if stats.skipped:
        log.info("t=%d: %d cycles had pairs with zero denominators (skipped pairs)",
                    t, stats.skipped)
    return stats


SUITES = ("lemmas", "thm2", "thm3", "thm4")


@dataclass
class Finding:
    suite: str
    check: str
    source: str
    detail: str


@dataclass
class CorpusReport:
    checks: dict[str, int] = field(default_factory=dict)
    violations: list[Finding] = field(default_factory=list)
    tight: list[Finding] = field(default_factory=list)
    notes: list[Finding] = field(default_factory=list)
    skipped_cycles: int = 0

    def count(self, suite: str, k: int = 1) -> None:
        self.checks[suite] = self.checks.get(suite, 0) + k

    @property
    def ok(self) -> bool:
        return not self.violations

    def merge(self, other: "CorpusReport") -> None:
        for k, v in other.checks.items():
            self.count(k, v)
        self.violations += other.violations
        self.tight += other.tight
        self.notes += other.notes
        self.skipped_cycles += other.skipped_cycles


@dataclass(frozen=True)
class CorpusItem:
    """A graph with an ordering; ``instance`` is set for bipartite items."""

    source: str
    graph: Graph
    ordering: FullOrdering
    instance: BipartiteInstance | None = None


def check_graph_bounds(item: CorpusItem, report: CorpusReport) -> None:
    """Edge-length lemmas and the sparse dual certificate for one item."""
    g, pi = item.graph, item.ordering
    if g.n < 2:
        return
    profile = cut_profile(g, pi)
    hist = edge_length_histogram(g, pi)
    lemmas = lemma_checks(hist, profile, g.n)
    report.count("lemmas", len(lemmas.checks))
    for chk in lemmas.violations:
        report.violations.append(Finding("lemmas", chk.name, item.source, f"{chk.lhs} > {chk.rhs}"))
    w = profile.width
    if w >= 1:
        cert = dual_certificate(g.n, w, 2 ** -0.5, (g.n - 1) * w)
        report.count("lemmas")
        if g.m > cert.objective + 1e-9:
            report.violations.append(Finding("lemmas", "weak-duality", item.source,
                                             f"m={g.m} > {cert.objective:.6f}"))


def check_unsuited_bound(item: CorpusItem, report: CorpusReport,
                         unsuited: int | None = None) -> None:
    inst = item.instance
    w = cut_profile(item.graph, item.ordering).width
    if unsuited is None:
        unsuited = len(classify_pairs(crossing_matrix(inst)).unsuited)
    bound = unsuited_bound(inst.n_b, w, inst.m)
    report.count("thm2")
    if unsuited > bound:
        report.violations.append(Finding("thm2", "unsuited-bound", item.source,
                                         f"{unsuited} unsuited > bound {bound} (w={w})"))
    elif unsuited == bound and bound > 0:
        report.tight.append(Finding("thm2", "unsuited-bound", item.source,
                                    f"{unsuited} unsuited = bound (w={w}, n_b={inst.n_b})"))
    if unsuited > theorem2_bound(inst.n_b, w, inst.m):
        report.notes.append(Finding("thm2", "closed-form", item.source,
                                    f"{unsuited} unsuited > n_b(w-1)-C(w,2) with n_b={inst.n_b} < w-1={w - 1}"))


def check_cycle_theorems(instance: BipartiteInstance, source: str, report: CorpusReport,
                         suites: Sequence[str], matrix: np.ndarray | None = None) -> None:
    if matrix is None:
        matrix = crossing_matrix(instance)
    for t in (3, 4):
        if "thm3" not in suites and not (t == 3 and "thm4" in suites):
            continue
        stats = scan_cycles(instance, t, matrix=matrix)
        report.skipped_cycles += stats.skipped
        if "thm3" in suites:
            report.count("thm3", stats.hypothesis_count)
            for cyc in stats.violations:
                report.violations.append(Finding("thm3", f"t={t}", source, f"cycle {cyc}"))
        if t == 3 and "thm4" in suites:
            report.count("thm4", stats.golden_checked)
            for cyc in stats.golden_violations:
                report.violations.append(Finding("thm4", "golden", source, f"triple {cyc}"))


def all_graphs(n: int) -> Iterable[Graph]:
    """Every labeled simple graph on ``n`` vertices.

    With the identity ordering this covers every (graph, ordering) pair on
    ``n`` vertices up to relabeling.
    """
    slots = list(combinations(range(n), 2))
    for bits in range(1 << len(slots)):
        yield Graph(n, tuple(e for i, e in enumerate(slots) if bits >> i & 1))


def all_bipartite(max_vertices: int) -> Iterable[BipartiteInstance]:
    """Every instance with ``n_a, n_b >= 1`` and ``n_a + n_b <= max_vertices``."""
    for total in range(2, max_vertices + 1):
        for n_a in range(1, total):
            n_b = total - n_a
            cells = [(a, b) for b in range(n_b) for a in range(n_a)]
            for bits in product((0, 1), repeat=len(cells)):
                yield BipartiteInstance.from_edges(
                    n_a, n_b, (cell for cell, on in zip(cells, bits) if on))


def interleavings(instance: BipartiteInstance) -> Iterable[FullOrdering]:
    """Every full ordering that keeps A in its fixed order."""
    n = instance.n
    for slots in combinations(range(n), instance.n_b):
        slot_set = set(slots)
        for b_seq in permutations(range(instance.n_b)):
            order, a_next, it = [], 0, iter(b_seq)
            for i in range(n):
                if i in slot_set:
                    order.append(instance.n_a + next(it))
                else:
                    order.append(a_next)
                    a_next += 1
            yield FullOrdering(tuple(order))


def verify_corpus(items: Iterable[CorpusItem], suites: Sequence[str] = SUITES) -> CorpusReport:
    """Run the selected suites over ``items``."""
    report = CorpusReport()
    cycle_done: set[BipartiteInstance] = set()
    for item in items:
        if "lemmas" in suites:
            check_graph_bounds(item, report)
        inst = item.instance
        if inst is None:
            continue
        if "thm2" in suites:
            check_unsuited_bound(item, report)
        if ("thm3" in suites or "thm4" in suites) and inst not in cycle_done:
            cycle_done.add(inst)
            check_cycle_theorems(inst, item.source, report, suites)
    return report


def exhaustive_report(max_graph_order: int = 6, max_bipartite: int = 6,
                      suites: Sequence[str] = SUITES) -> CorpusReport:
    """Every graph up to ``max_graph_order`` vertices and every bipartite
    instance up to ``max_bipartite`` vertices under every consistent ordering."""
    report = CorpusReport()
    if "lemmas" in suites:
        for n in range(2, max_graph_order + 1):
            for g in all_graphs(n):
                check_graph_bounds(CorpusItem(f"graph n={n}", g, FullOrdering.identity(n)), report)
    if any(s in suites for s in ("thm2", "thm3", "thm4")):
        for inst in all_bipartite(max_bipartite):
            source = f"bipartite {inst.n_a}+{inst.n_b} adj={inst.adj}"
            matrix = crossing_matrix(inst)
            if "thm2" in suites:
                unsuited = len(classify_pairs(matrix).unsuited)
                g = inst.to_graph()
                for pi in interleavings(inst):
                    check_unsuited_bound(CorpusItem(source, g, pi, inst), report, unsuited)
            if "thm3" in suites or "thm4" in suites:
                check_cycle_theorems(inst, source, report, suites, matrix)
    return report


EXTREMAL_POINTS = ((12, 6), (20, 3), (5, 5), (6, 2), (10, 4), (9, 3), (8, 5), (15, 7), (7, 7))


def default_corpus(seed: int = 0, n_random: int = 500, orderings_per_instance: int = 2) -> list[CorpusItem]:
    """Seeded random instances (n_a <= 6, n_b <= 7) plus the generator families."""
    from .generators import (bandwidth_graph, golden_ratio_config, random_bipartite,
                             random_interleaving, unsuited_extremal)

    rng = random.Random(seed)
    items: list[CorpusItem] = []
    for _ in range(n_random):
        n_a, n_b = rng.randint(1, 6), rng.randint(1, 7)
        m = rng.randint(0, n_a * n_b)
        inst_seed = rng.randrange(2**32)
        inst = random_bipartite(n_a, n_b, m, inst_seed)
        g = inst.to_graph()
        order_rng = random.Random(inst_seed)
        for j in range(orderings_per_instance):
            pi = random_interleaving(inst, order_rng)
            items.append(CorpusItem(f"random({n_a},{n_b},{m},seed={inst_seed})#{j}", g, pi, inst))
    for n_b, w in EXTREMAL_POINTS:
        inst, pi = unsuited_extremal(n_b, w)
        items.append(CorpusItem(f"unsuited_extremal({n_b},{w})", inst.to_graph(), pi, inst))
    for n in (7, 12, 20):
        for k in range(1, min(n, 6)):
            g, pi = bandwidth_graph(n, k)
            items.append(CorpusItem(f"bandwidth_graph({n},{k})", g, pi))
    for d in (5, 10, 30):
        cfg = golden_ratio_config(d)
        inst = cfg.instance
        items.append(CorpusItem(f"golden_ratio_config({d})", inst.to_graph(),
                                FullOrdering.identity(inst.n), inst))
    return items
