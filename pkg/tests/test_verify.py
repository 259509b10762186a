import numpy as np
import pytest

from oscm.core import BipartiteInstance
from oscm.crossings import crossing_matrix
from oscm.cutwidth import cutwidth_of
from oscm.generators import PHI, from_string, golden_ratio_config, unsuited_extremal
from oscm.reductions import classify_pairs, theorem2_bound, unsuited_bound
from oscm.solvers import greedy_digraph
from oscm.verify import (CorpusItem, all_bipartite, all_graphs, check_theorem3, check_theorem4,
                         default_corpus, exhaustive_report, interleavings, scan_cycles,
                         verify_corpus)

from conftest import inst, random_instances


def test_theorem3_on_string_triples():
    for s in ("abcabc", "acbbca", "abccbaab", "cabbacab"):
        g, _ = from_string(s)
        stats = scan_cycles(g, 3)
        assert stats.examined == 2
        assert not stats.violations


def test_theorem3_hypothesis_fails():
    m = np.array([[0, 5, 0], [1, 0, 0], [0, 0, 0]])
    rep = check_theorem3(m, (0, 1, 2))
    assert rep.hypothesis_ok is False and rep.satisfied is None


def test_theorem3_zero_forward_entry():
    # c[0,1] = 0 and the others balanced: the 1/1 terms satisfy it
    m = np.array([[0, 0, 2], [3, 0, 1], [2, 1, 0]])
    rep = check_theorem3(m, (0, 1, 2))
    assert rep.hypothesis_ok and rep.satisfied
    assert rep.max_ratio == 1


def test_theorem3_all_degenerate_not_evaluated():
    g = inst(1, [0], [0], [0])
    rep = check_theorem3(crossing_matrix(g), (0, 1, 2))
    assert rep.hypothesis_ok and rep.satisfied is None
    assert rep.skipped_pairs == (0, 1, 2)


def test_theorem3_errors():
    m = np.zeros((4, 4), dtype=np.int64)
    with pytest.raises(ValueError):
        check_theorem3(m, (0, 1))
    with pytest.raises(ValueError):
        check_theorem3(m, (0, 1, 1))
    with pytest.raises(ValueError):
        check_theorem3(m, (0, 1, 2), degrees=(1, 1, 0, 1))


def test_theorem4_golden_configs():
    ratios = []
    for d in (10, 100, 1000):
        cfg = golden_ratio_config(d)
        rep = check_theorem4(crossing_matrix(cfg.instance), cfg.triple, cfg.instance)
        assert rep.disjoint and rep.hypothesis_ok and rep.satisfied
        ratios.append(rep.max_ratio)
    assert ratios[0] >= ratios[1] >= ratios[2] >= PHI - 1


def test_theorem4_symmetric_triple():
    # nested neighborhoods cross equally both ways
    g = inst(6, [0, 5], [1, 4], [2, 3])
    m = crossing_matrix(g)
    assert m[0, 1] == m[1, 0] and m[1, 2] == m[2, 1] and m[2, 0] == m[0, 2]
    rep = check_theorem4(m, (0, 1, 2), g)
    assert rep.satisfied and rep.max_ratio == 1


def test_theorem4_not_disjoint():
    g = inst(3, [0, 1], [1, 2], [2])
    rep = check_theorem4(crossing_matrix(g), (0, 1, 2), g)
    assert rep.disjoint is False and rep.satisfied is None


def test_theorem4_scan_many_triples():
    found = 0
    for g in random_instances(300, seed=33, max_a=10, max_b=5):
        stats = scan_cycles(g, 3)
        found += stats.golden_checked
        assert not stats.golden_violations
    assert found > 0


def test_scan_t3_disjoint_minimum():
    for g in random_instances(150, seed=31, max_a=9, max_b=6):
        stats = scan_cycles(g, 3)
        assert not stats.violations and not stats.golden_violations


def test_scan_golden_approaches_phi():
    mins = [scan_cycles(golden_ratio_config(d).instance, 3).min_max_ratio for d in (10, 100)]
    assert mins[0] >= mins[1] >= PHI - 1


def test_scan_empty_and_sampling():
    stats = scan_cycles(BipartiteInstance(0, 0, ()), 3)
    assert stats.examined == 0 and stats.min_max_ratio is None
    g = random_instances(1, seed=40, max_a=10, max_b=7)[0]
    a = scan_cycles(g, 5, budget=200, seed=3)
    b = scan_cycles(g, 5, budget=200, seed=3)
    assert not a.exhaustive and a.seed == 3
    assert (a.examined, a.hypothesis_count, a.min_max_ratio) == \
        (b.examined, b.hypothesis_count, b.min_max_ratio)
    assert not a.violations


def test_greedy_paths_consistent_with_theorem3():
    # a greedy path u -> v -> x plus the pair {x, u} is a 3-cycle; when its
    # ratios meet the hypothesis the cycle bound must hold
    for g in random_instances(80, seed=32):
        m = crossing_matrix(g)
        dag = greedy_digraph(m)
        live = [b for b in range(g.n_b) if g.adj[b]]
        for u in live:
            for v in live:
                for x in live:
                    if len({u, v, x}) == 3 and dag.reaches(u, v) and dag.reaches(v, x):
                        rep = check_theorem3(m, (u, v, x))
                        assert rep.satisfied is not False


def test_all_graphs_counts():
    assert sum(1 for _ in all_graphs(4)) == 64
    assert sum(1 for _ in all_bipartite(3)) == 2 + 2 * 4
    g = inst(2, [0])
    orders = list(interleavings(g))
    assert len(orders) == 3 and all(o.respects_a_order(g) for o in orders)


def test_exhaustive_sweep_clean():
    rep = exhaustive_report(5, 5)
    assert rep.ok, rep.violations[:5]
    assert rep.checks["lemmas"] > 0 and rep.checks["thm2"] > 0


def test_ext12_tight_in_corpus():
    fig, pi = unsuited_extremal(12, 6)
    rep = verify_corpus([CorpusItem("ext12", fig.to_graph(), pi, fig)], ("thm2",))
    assert rep.ok and len(rep.tight) == 1


def test_closed_form_excess_only_below_range():
    excess = 0
    for g in all_bipartite(5):
        n_unsuited = len(classify_pairs(crossing_matrix(g)).unsuited)
        for pi in interleavings(g):
            w = cutwidth_of(g, pi)
            if n_unsuited > theorem2_bound(g.n_b, w, g.m):
                excess += 1
                assert g.n_b < w - 1
            assert n_unsuited <= unsuited_bound(g.n_b, w, g.m)
    assert excess > 0
    rep = exhaustive_report(0, 5, suites=("thm2",))
    assert rep.ok and len(rep.notes) == excess


def test_default_corpus_clean():
    items = default_corpus(seed=0, n_random=60)
    rep = verify_corpus(items)
    assert rep.ok, rep.violations[:5]
    assert any("bandwidth" in it.source for it in items)
    assert any(f.source.startswith("unsuited_extremal") for f in rep.tight)


def test_corpus_deterministic():
    a = [(i.source, i.ordering) for i in default_corpus(seed=4, n_random=20)]
    b = [(i.source, i.ordering) for i in default_corpus(seed=4, n_random=20)]
    assert a == b
