import itertools

import pytest

from helpers import (complete, complete_multipartite, edgeless, gnp, k5_minus_edge, path,
                     planted, triangle)
from maxeqc.graph import Graph, degeneracy_ordering, is_k_defective
from maxeqc.kdc import (SearchBudget, compute_ub, greedy_color, greedy_kdc, reduce_candidates,
                        solve_defect, ub_from_color_counts)
from maxeqc.oracle import brute_max_kdc


def assert_proper(g, coloring):
    for u, v in g.edges():
        assert coloring.color_of[u] != coloring.color_of[v]
    assert sum(coloring.color_count) == g.n


class TestGreedyColor:
    def test_triangle(self):
        c = greedy_color(triangle())
        assert (c.num_colors, sorted(c.color_count)) == (3, [1, 1, 1])

    def test_edgeless(self):
        c = greedy_color(edgeless(4))
        assert c.color_count == (4,)

    def test_path(self):
        c = greedy_color(path(3))
        assert c.num_colors == 2
        assert_proper(path(3), c)

    def test_reverse_degeneracy_order(self):
        g = gnp(12, 0.4, 5)
        order = degeneracy_ordering(g).order
        c = greedy_color(g)
        # the last vertex of the ordering is coloured first
        assert c.color_of[order[-1]] == 0
        assert_proper(g, c)


class TestComputeUB:
    def test_triangle(self):
        assert compute_ub(triangle(), 0) == 3

    def test_edgeless(self):
        assert compute_ub(edgeless(4), 0) == 1

    @pytest.mark.parametrize("n", [3, 5, 7])
    def test_budget_covers_everything(self, n):
        assert compute_ub(edgeless(n), n * (n - 1) // 2) == n
        assert compute_ub(complete(n), n * (n - 1) // 2) == n

    def test_leftover_budget_regression(self):
        # three classes of three, k=5: two per class costs 3, leaving 2; one more vertex
        # from a class costs 2 more, so 7 vertices fit
        g = complete_multipartite(3, 3, 3)
        assert brute_max_kdc(g, 5).size == 7
        assert compute_ub(g, 5) >= 7
        assert ub_from_color_counts([3, 3, 3], 5) == 7

    def test_counts_edge_cases(self):
        assert ub_from_color_counts([], 3) == 0
        assert ub_from_color_counts([1, 1, 1], 0) == 3

    def test_negative_k(self):
        with pytest.raises(ValueError):
            compute_ub(triangle(), -1)


class TestReduceCandidates:
    def test_path(self):
        assert reduce_candidates(path(4), 3, 0) == set()

    def test_no_constraint(self):
        assert reduce_candidates(path(4), 0, 0) == {0, 1, 2, 3}

    def test_k4(self):
        assert reduce_candidates(complete(4), 3, 0) == {0, 1, 2, 3}

    @pytest.mark.parametrize("seed", range(20))
    def test_keeps_every_larger_solution(self, seed):
        g = gnp(10, 0.6, seed)
        for k in (0, 2, 4):
            best = brute_max_kdc(g, k).size
            for lb in range(best):
                keep = reduce_candidates(g, lb, k)
                for combo in itertools.combinations(range(g.n), best):
                    if is_k_defective(g, combo, k):
                        assert set(combo) <= keep


class TestSolveDefect:
    def test_examples(self):
        assert solve_defect(k5_minus_edge(), 0).size == 4
        assert solve_defect(k5_minus_edge(), 1).size == 5
        assert solve_defect(edgeless(3), 3).size == 3

    def test_empty(self):
        res = solve_defect(edgeless(0), 2)
        assert (res.size, res.witness, res.optimal) == (0, (), True)

    def test_negative_k(self):
        with pytest.raises(ValueError):
            solve_defect(triangle(), -1)

    def test_lb_hint_out_of_range(self):
        with pytest.raises(ValueError):
            solve_defect(triangle(), 0, lb_hint=4)

    @pytest.mark.parametrize("seed", range(40))
    def test_matches_oracle(self, seed):
        g = gnp(6 + seed % 9, (0.3, 0.5, 0.8)[seed % 3], seed)
        for k in range(7):
            res = solve_defect(g, k)
            assert res.size == brute_max_kdc(g, k).size
            assert len(res.witness) == res.size
            assert is_k_defective(g, res.witness, k)
            assert res.optimal

    @pytest.mark.parametrize("seed", range(10))
    def test_wrong_lb_hint_costs_only_time(self, seed):
        g = gnp(11, 0.5, seed)
        for k in (0, 3):
            assert solve_defect(g, k, lb_hint=g.n).size == brute_max_kdc(g, k).size

    def test_hint_is_validated(self):
        g = k5_minus_edge()
        # {3, 4} misses an edge, so it is not a 0-defective clique and must be ignored
        res = solve_defect(g, 0, hint=[3, 4])
        assert res.size == 4 and is_k_defective(g, res.witness, 0)

    def test_node_budget_reported(self):
        g = planted(300, 18, 0.9, 8, 1)
        budget = SearchBudget(node_limit=5)
        res = solve_defect(g, 30, budget=budget)
        assert not res.optimal
        assert budget.exhausted
        assert is_k_defective(g, res.witness, 30)

    def test_shared_budget_deadline(self):
        budget = SearchBudget(time_limit=60).start()
        deadline = budget._deadline
        solve_defect(triangle(), 0, budget=budget)
        assert budget._deadline == deadline

    def test_planted_block_found(self):
        g = planted(400, 15, 1.0, 5, 3)
        assert solve_defect(g, 0).size >= 15
        assert solve_defect(g, 4).size >= 15


def test_greedy_kdc_is_defective():
    for seed in range(10):
        g = gnp(12, 0.5, seed)
        for k in range(4):
            assert is_k_defective(g, greedy_kdc(g, k), k)


def test_budget_validation():
    with pytest.raises(ValueError):
        SearchBudget(time_limit=-1)
    with pytest.raises(ValueError):
        SearchBudget(node_limit=-1)


def test_k_zero_is_max_clique():
    g = Graph.from_edges(6, list(itertools.combinations(range(4), 2)) + [(4, 5), (3, 4)])
    assert solve_defect(g, 0).size == 4
