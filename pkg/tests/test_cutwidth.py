import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from oscm.core import FullOrdering, Graph
from oscm.cutwidth import (brute_force_cutwidth, c_from_width, cut_profile, cutwidth_of,
                           dense_coefficient, dual_certificate, edge_length_histogram,
                           exact_cutwidth, f_coefficient, floor_cn, lemma3_sum_bound,
                           lemma_checks, optimize_a, size_bound)
from oscm.generators import bandwidth_graph

K4 = Graph(4, tuple((i, j) for i in range(4) for j in range(i + 1, 4)))
P4 = Graph(4, ((0, 1), (1, 2), (2, 3)))


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(2, max_n))
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(slots), max_size=len(slots)))
    order = draw(st.permutations(list(range(n))))
    g = Graph(n, tuple(e for e, on in zip(slots, mask) if on))
    return g, FullOrdering(tuple(order))


def test_single_edge_profile():
    g = Graph(2, ((0, 1),))
    assert cut_profile(g, FullOrdering((0, 1))).cuts == (1,)
    assert cut_profile(g, FullOrdering((1, 0))).cuts == (1,)


def test_k4_any_order():
    for seed in range(5):
        order = list(range(4))
        random.Random(seed).shuffle(order)
        assert cutwidth_of(K4, FullOrdering(tuple(order))) == 4


def test_ext12_cutwidth(ext12):
    inst, pi = ext12
    assert cutwidth_of(inst, pi) == 6


def test_bw72_histogram_and_profile():
    g, pi = bandwidth_graph(7, 2)
    assert edge_length_histogram(g, pi).m_ell == (6, 5, 0, 0, 0, 0)
    assert cut_profile(g, pi).cuts == (2, 3, 3, 3, 3, 2)


def test_empty_graph_histogram():
    g = Graph(4, ())
    assert edge_length_histogram(g, FullOrdering.identity(4)).m_ell == (0, 0, 0)


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_cut_length_identity_and_lemmas(case):
    g, pi = case
    prof = cut_profile(g, pi)
    hist = edge_length_histogram(g, pi)
    assert hist.weighted_sum == prof.total
    assert hist.m == g.m
    report = lemma_checks(hist, prof, g.n)
    assert report.ok, report.violations


def test_lemma_report_bw72():
    g, pi = bandwidth_graph(7, 2)
    rep = lemma_checks(edge_length_histogram(g, pi), cut_profile(g, pi), 7)
    by_name = {c.name: c for c in rep.checks}
    assert (by_name["lemma2"].lhs, by_name["lemma2"].rhs) == (16, 18)
    assert by_name["lemma2"].holds


def test_lemma1_tight_on_k4():
    rep = lemma_checks(edge_length_histogram(K4, FullOrdering.identity(4)),
                       cut_profile(K4, FullOrdering.identity(4)), 4)
    lemma1 = [c for c in rep.checks if c.name.startswith("lemma1")]
    assert len(lemma1) == 3 and all(c.tight for c in lemma1)


def test_lemma3_inapplicable_for_tiny_w():
    g = Graph(5, ((0, 1),))
    rep = lemma_checks(edge_length_histogram(g, FullOrdering.identity(5)),
                       cut_profile(g, FullOrdering.identity(5)), 5)
    (l3,) = [c for c in rep.checks if c.name == "lemma3"]
    assert l3.holds is None and l3.note == "inapplicable"


def test_floor_cn_matches_root():
    for n in range(2, 40):
        for w in range(1, n * n // 4 + 1):
            c = c_from_width(n, w)
            k = floor_cn(n, w)
            assert k * (n - k) <= w
            # float floor agrees away from exact integer roots
            if abs(c * n - round(c * n)) > 1e-9:
                assert k == math.floor(c * n)


def test_dual_certificate_bw72():
    cert = dual_certificate(7, 3, 1 / math.sqrt(2), 18)
    assert cert.d == 3
    assert cert.feasible
    assert cert.objective == pytest.approx(11.816496580927726, rel=1e-12)
    assert cert.objective >= 11


def test_dual_certificate_degenerate_d():
    cert = dual_certificate(5, 4, 2.0, 10)
    assert cert.d == 1
    assert all(y == 0 for y in cert.y)
    assert cert.objective == pytest.approx(10 * cert.x)


def test_dual_certificate_errors():
    with pytest.raises(ValueError):
        dual_certificate(5, 4, 0.0, 10)
    with pytest.raises(ValueError):
        dual_certificate(5, 0, 1.0, 10)
    with pytest.raises(ValueError):
        dual_certificate(3, 100, 0.5, 10)


@pytest.mark.parametrize("n, w", [(100, 10), (1000, 50), (1000, 300), (10000, 50), (200, 2000)])
def test_a_sweep_near_optimum(n, w):
    b = (n - 1) * w
    sweep = []
    for i in range(1, 400):
        a = 0.05 + i * 0.005
        if math.ceil(math.sqrt(w) / a) <= n:
            sweep.append(dual_certificate(n, w, a, b).objective)
    at_half_root = dual_certificate(n, w, 1 / math.sqrt(2), b).objective
    assert at_half_root <= min(sweep) * 1.01


@settings(max_examples=100, deadline=None)
@given(graphs())
def test_weak_duality(case):
    g, pi = case
    w = cutwidth_of(g, pi)
    if w == 0:
        return
    for a in (0.3, 1 / math.sqrt(2), 1.5):
        if math.ceil(math.sqrt(w) / a) <= g.n:
            assert g.m <= dual_certificate(g.n, w, a, (g.n - 1) * w).objective + 1e-9


def test_size_bound_modes():
    sb = size_bound(7, 3)
    assert sb.bound >= 11
    assert sb.leading_term == pytest.approx(7 * math.sqrt(6))
    dense = size_bound(20, 100, "dense")
    assert dense.c == pytest.approx(0.5)
    assert dense.leading_term == pytest.approx(0.5 * 400)
    assert dense.certificate.b == lemma3_sum_bound(20, 100)
    # K_20 has cutwidth 100 and 190 edges
    assert dense.bound >= 190
    with pytest.raises(ValueError):
        size_bound(10, 30, "dense")
    with pytest.raises(ValueError):
        size_bound(10, 3, "medium")


def test_f_values():
    assert f_coefficient(0.5) == pytest.approx(0.5, abs=1e-12)
    assert f_coefficient(1e-8) < 1e-3
    for c in (0.01, 0.1, 0.3, 0.5):
        assert dense_coefficient(c, 0.5) == pytest.approx(f_coefficient(c), rel=1e-12)


def test_optimize_a():
    a, g = optimize_a(0.5)
    assert a == pytest.approx(0.5, abs=1e-4)
    assert g <= f_coefficient(0.5) + 1e-9
    for i in range(50):
        c = 0.01 + (0.5 - 0.01) * i / 49
        assert optimize_a(c)[1] <= f_coefficient(c) + 1e-9
    assert optimize_a(1e-6)[1] < 0.01
    # the plus-sign variant does not improve on f
    assert optimize_a(0.5, sign=+1)[1] == pytest.approx(0.625, rel=1e-7)


def test_optimize_a_frozen_values():
    assert optimize_a(0.01)[1] == pytest.approx(0.13657366660645034, rel=1e-8)
    assert f_coefficient(0.01) == pytest.approx(0.14215229691046513, rel=1e-12)


def test_exact_cutwidth_examples():
    assert exact_cutwidth(K4)[0] == 4
    assert exact_cutwidth(P4)[0] == 1
    g, pi = bandwidth_graph(7, 2)
    w, witness = exact_cutwidth(g)
    assert w <= cutwidth_of(g, pi) == 3
    assert cutwidth_of(g, witness) == w
    with pytest.raises(ValueError):
        exact_cutwidth(Graph(11, ()))


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=7))
def test_exact_cutwidth_matches_brute_force(case):
    g, _ = case
    w, witness = exact_cutwidth(g)
    assert w == brute_force_cutwidth(g)
    assert cutwidth_of(g, witness) == w
