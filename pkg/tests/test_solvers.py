import random
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oscm.core import BipartiteInstance, BOrdering
from oscm.crossings import crossing_lower_bound, crossing_matrix, total_crossings
from oscm.reductions import classify_pairs, reduce
from oscm.solvers import (BudgetExceeded, CycleError, OrientationDigraph, SearchStats,
                          brute_force, exact_dp, exact_unsuited, greedy, greedy_digraph,
                          greedy_pair_order, solve)

from conftest import inst, random_instances


def test_greedy_single_suited_pair():
    m = crossing_matrix(inst(2, [0], [1]))
    sol = greedy(m)
    assert sol.ordering.seq == (0, 1) and sol.crossings == 0


def test_unsuited_pair_either_order():
    m = crossing_matrix(inst(3, [0, 2], [1]))
    assert exact_unsuited(m).crossings == 1
    assert brute_force(m).crossings == 1


def test_no_unsuited_pairs_no_branching():
    g = inst(4, [0], [1, 2], [3])
    m = crossing_matrix(g)
    stats = SearchStats()
    sol = exact_unsuited(m, stats=stats)
    assert sol.crossings == 0 and sol.ordering.seq == (0, 1, 2)
    assert stats.leaves == 0


def test_dp_trivial_and_limits():
    m = crossing_matrix(inst(1, [0]))
    assert exact_dp(m).crossings == 0 and exact_dp(m).ordering.seq == (0,)
    assert exact_dp(np.zeros((0, 0), dtype=np.int64)).ordering.seq == ()
    big = crossing_matrix(BipartiteInstance(1, 10, ((0,),) * 10))
    with pytest.raises(BudgetExceeded):
        exact_dp(big, limit=8)
    with pytest.raises(BudgetExceeded):
        brute_force(big)


def test_budget_exceeded(ext12):
    m = crossing_matrix(ext12[0])
    with pytest.raises(BudgetExceeded):
        exact_unsuited(m)


def test_ext12_solvers_agree(ext12):
    m = crossing_matrix(ext12[0])
    dp = exact_dp(m)
    ex = exact_unsuited(m, budget=50)
    # frozen from the first run: the pairwise lower bound is attained
    assert dp.crossings == ex.crossings == 45
    assert crossing_lower_bound(m) == 45


def test_brute_force_three():
    g = inst(3, [1, 2], [0], [0, 2])
    m = crossing_matrix(g)
    best = min(total_crossings(m, BOrdering(p)) for p in permutations(range(3)))
    assert brute_force(m).crossings == best


def test_exact_solvers_agree_with_oracle():
    for g in random_instances(200, seed=21, max_b=8):
        m = crossing_matrix(g)
        oracle = brute_force(m).crossings
        for sol in (exact_dp(m), exact_unsuited(m, budget=40)):
            assert sol.crossings == oracle
            assert total_crossings(m, sol.ordering) == sol.crossings


def _respects(seq, forced):
    rank = {b: i for i, b in enumerate(seq)}
    return all(rank[u] < rank[v] for u, v in forced)


def test_exact_unsuited_respects_forced_pairs():
    for g in random_instances(200, seed=22):
        g = reduce(g).reduced
        m = crossing_matrix(g)
        c = classify_pairs(m)
        sol = exact_unsuited(m, c, budget=40)
        assert _respects(sol.ordering.seq, c.forced)


def test_greedy_bounds():
    for g in random_instances(200, seed=23, max_b=8):
        m = crossing_matrix(g)
        sol = greedy(m)
        assert sorted(sol.ordering.seq) == list(range(g.n_b))
        assert sol.crossings == total_crossings(m, sol.ordering)
        assert crossing_lower_bound(m) <= brute_force(m).crossings <= sol.crossings


def test_greedy_optimal_when_all_suited():
    seen = 0
    for g in random_instances(600, seed=24, max_b=7):
        m = crossing_matrix(g)
        if classify_pairs(m).unsuited:
            continue
        seen += 1
        assert greedy(m).crossings == brute_force(m).crossings == crossing_lower_bound(m)
    assert seen > 50


def test_greedy_pair_order_exact_ties():
    # ratios 1/3 and 2/6 tie exactly: index order decides
    m = np.array([[0, 1, 2], [3, 0, 0], [6, 0, 0]], dtype=np.int64)
    assert greedy_pair_order(m)[:2] == [(0, 1), (0, 2)]
    assert greedy_pair_order(m)[-1] == (1, 2)


def test_greedy_digraph_total_and_acyclic():
    for g in random_instances(100, seed=25):
        dag = greedy_digraph(crossing_matrix(g))
        assert dag.is_total()
        for u in range(dag.n):
            assert not dag.reaches(u, u)


def test_digraph_closure():
    d = OrientationDigraph(4)
    assert d.add_arc(0, 1) == [(0, 1)]
    assert sorted(d.add_arc(1, 2)) == [(0, 2), (1, 2)]
    assert d.reaches(0, 2) and not d.reaches(2, 0)
    assert d.add_arc(0, 2) == []
    with pytest.raises(CycleError):
        d.add_arc(2, 0)
    d.add_arc(3, 0)
    assert d.topological_order() == [3, 0, 1, 2]
    assert d.is_total()


@settings(max_examples=80, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)), max_size=30))
def test_digraph_matches_recomputed_closure(arcs):
    d = OrientationDigraph(7)
    kept = []
    for u, v in arcs:
        try:
            d.add_arc(u, v)
            kept.append((u, v))
        except CycleError:
            assert u == v or d.reaches(v, u)
    closure = [[False] * 7 for _ in range(7)]
    for u, v in kept:
        closure[u][v] = True
    for k in range(7):
        for i in range(7):
            for j in range(7):
                closure[i][j] = closure[i][j] or (closure[i][k] and closure[k][j])
    for i in range(7):
        assert not closure[i][i]
        for j in range(7):
            assert d.reaches(i, j) == closure[i][j]
    order = d.topological_order()
    rank = {v: i for i, v in enumerate(order)}
    assert all(rank[u] < rank[v] for u, v in kept)


@pytest.mark.parametrize("algo", ["greedy", "exact", "dp", "auto", "brute"])
def test_solve_pipeline(algo):
    for g in random_instances(60, seed=26):
        rep = solve(g, algo)
        sigma = rep.solution.ordering
        assert sorted(sigma.seq) == list(range(g.n_b))
        assert rep.solution.crossings == total_crossings(crossing_matrix(g), sigma)
        if algo != "greedy":
            assert rep.solution.crossings == brute_force(crossing_matrix(g)).crossings


def test_solve_auto_choices(ext12):
    assert solve(inst(2, [0], [1])).algorithm == "exact"
    assert solve(ext12[0]).algorithm == "dp"
    assert solve(ext12[0], dp_limit=10).algorithm == "greedy"
    with pytest.raises(ValueError):
        solve(ext12[0], "simplex")


def test_determinism():
    for g in random_instances(40, seed=27):
        a = solve(g, "exact").solution
        b = solve(g, "exact", threads=4).solution
        assert a == b
        m = crossing_matrix(g)
        assert greedy(m) == greedy(m.copy())
        assert exact_dp(m) == exact_dp(m.copy())


def test_time_limit():
    rng = random.Random(5)
    rows = tuple(tuple(sorted(rng.sample(range(30), 8))) for _ in range(16))
    g = BipartiteInstance(30, 16, rows)
    m = crossing_matrix(g)
    with pytest.raises(BudgetExceeded):
        exact_unsuited(m, budget=200, time_limit=1e-6)
