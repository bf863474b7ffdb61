import pytest

from helpers import complete, edgeless, gnp, star, triangle_pendant
from maxeqc.graph import Graph, degeneracy_ordering, is_eqc
from maxeqc.heuristics import (EmptySelectionError, ScoreState, add_best_vertex, degen, degen_opt,
                               eqc_heu, eqc_heu_pro, make_rng, remove_worst_vertex, update_score)
from maxeqc.oracle import brute_max_eqc


def assert_state_consistent(state, g):
    for v in range(g.n):
        assert state.deg_into_S[v] == sum(1 for u in g.adj[v] if u in state.selected)
        assert state.in_selected[v] == (v in state.selected)
    assert state.edges == g.count_edges_within(state.selected)
    assert state.frontier == {v for v in range(g.n)
                              if v not in state.selected and state.deg_into_S[v] > 0}


class TestDegen:
    def test_triangle_pendant(self):
        assert degen(triangle_pendant(), "0.7").members == {0, 1, 2}

    def test_k4(self):
        assert len(degen(complete(4), "0.9")) == 4

    def test_edgeless(self):
        assert len(degen(edgeless(5), "0.5")) == 1

    @pytest.mark.parametrize("seed", range(15))
    def test_longest_feasible_suffix(self, seed):
        g = gnp(12, 0.5, seed)
        order = degeneracy_ordering(g).order
        found = degen(g, "0.7")
        size = len(found)
        assert found.members == set(order[g.n - size:])
        assert found.is_eqc("0.7")
        for longer in range(size + 1, g.n + 1):
            assert not is_eqc(g, order[g.n - longer:], "0.7")


class TestDegenOpt:
    def test_two_components(self):
        g = Graph.from_edges(7, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3),
                                 (4, 5), (5, 6), (4, 6)])
        assert degen_opt(g, "0.9").members == {0, 1, 2, 3}

    def test_star(self):
        assert len(degen_opt(star(), "0.6")) == 3

    @pytest.mark.parametrize("seed", range(15))
    def test_at_least_degen(self, seed):
        g = gnp(12, 0.4, seed)
        assert len(degen_opt(g, "0.8")) >= len(degen(g, "0.8"))


class TestScores:
    def graph(self):
        # a=0, b=1, c=2 with edges ab and ac
        return Graph.from_edges(3, [(0, 1), (0, 2)])

    def test_update_score(self):
        g = self.graph()
        state = ScoreState.start(g, [0, 1])
        update_score(state, g)
        assert state.score == [-1, -2, 1]
        update_score(state, g)
        assert state.score == [-2, -4, 2]

    def test_only_selected_terms_when_no_candidates(self):
        g = self.graph()
        state = ScoreState.start(g, [0, 1, 2])
        update_score(state, g)
        assert state.score == [-2, -2, -2]

    def test_edgeless_scores_stay_zero(self):
        g = edgeless(4)
        state = ScoreState.start(g, [0, 1])
        update_score(state, g)
        assert state.score == [0, 0, 0, 0]

    def test_move_resets_score(self):
        g = self.graph()
        state = ScoreState.start(g, [0])
        update_score(state, g)
        assert state.score[1] == 1
        state.move_in(g, 1)
        assert state.score[1] == 0
        assert_state_consistent(state, g)

    def test_add_prefers_selected_neighbours(self):
        # c=2 touches both selected vertices, d=3 only one
        g = Graph.from_edges(4, [(0, 2), (1, 2), (0, 3)])
        state = ScoreState.start(g, [0, 1])
        state.score[3] = 100
        assert add_best_vertex(state, g, make_rng(0)) == 2

    def test_add_breaks_ties_by_score(self):
        g = Graph.from_edges(3, [(0, 1), (0, 2)])
        state = ScoreState.start(g, [0])
        state.score[1], state.score[2] = 1, 5
        assert add_best_vertex(state, g, make_rng(0)) == 2

    def test_add_on_full_selection(self):
        g = complete(3)
        state = ScoreState.start(g, range(3))
        assert add_best_vertex(state, g, make_rng(0)) is None

    def test_add_without_frontier(self):
        g = edgeless(3)
        state = ScoreState.start(g, [1])
        assert add_best_vertex(state, g, make_rng(0)) in (0, 2)

    def test_full_tie_depends_only_on_seed(self):
        g = star()
        picks = set()
        for seed in range(20):
            first = add_best_vertex(ScoreState.start(g, [0]), g, make_rng(seed))
            again = add_best_vertex(ScoreState.start(g, [0]), g, make_rng(seed))
            assert first == again
            picks.add(first)
        assert picks <= {1, 2, 3} and len(picks) > 1

    def test_remove_lowest_degree(self):
        # triangle a, b, c minus edge bc
        g = Graph.from_edges(3, [(0, 1), (0, 2)])
        state = ScoreState.start(g, [0, 1, 2])
        assert remove_worst_vertex(state, g, make_rng(0)) in (1, 2)
        assert_state_consistent(state, g)

    def test_remove_breaks_ties_by_score(self):
        g = Graph.from_edges(3, [(0, 1), (0, 2)])
        state = ScoreState.start(g, [0, 1, 2])
        state.score[1], state.score[2] = 3, -3
        assert remove_worst_vertex(state, g, make_rng(0)) == 2

    def test_remove_singleton(self):
        g = complete(3)
        state = ScoreState.start(g, [2])
        assert remove_worst_vertex(state, g, make_rng(0)) == 2
        assert not state.selected

    def test_remove_from_empty(self):
        g = complete(3)
        with pytest.raises(EmptySelectionError):
            remove_worst_vertex(ScoreState.start(g), g, make_rng(0))

    def test_two_adds_one_remove_grows_by_one(self):
        g = gnp(14, 0.5, 2)
        rng = make_rng(4)
        state = ScoreState.start(g, [0])
        for size in range(2, 8):
            add_best_vertex(state, g, rng)
            add_best_vertex(state, g, rng)
            remove_worst_vertex(state, g, rng)
            update_score(state, g)
            assert len(state.selected) == size
            assert_state_consistent(state, g)


class TestEqcHeu:
    def test_k4(self):
        assert len(eqc_heu(complete(4), "0.9", [0], 0)) == 4

    def test_seed_already_maximum(self):
        g = triangle_pendant()
        assert eqc_heu(g, "0.7", [0, 1, 2], 0).members == {0, 1, 2}

    def test_infeasible_seed(self):
        with pytest.raises(ValueError):
            eqc_heu(star(), "0.9", [1, 2], 0)

    def test_out_of_range_seed(self):
        with pytest.raises(ValueError):
            eqc_heu(star(), "0.9", [9], 0)

    @pytest.mark.parametrize("seed", range(10))
    def test_fixed_seed_is_deterministic(self, seed):
        g = gnp(16, 0.5, seed)
        start = degen(g, "0.8")
        a = eqc_heu(g, "0.8", start, seed)
        b = eqc_heu(g, "0.8", start, seed)
        assert a.sorted() == b.sorted()
        assert a.internal_edges == b.internal_edges


class TestEqcHeuPro:
    def test_triangle_pendant(self):
        assert eqc_heu_pro(triangle_pendant(), "0.7", [2], 0).members == {0, 1, 2}

    def test_fixed_point(self):
        g = complete(5)
        assert len(eqc_heu_pro(g, "0.9", range(5), 0)) == 5

    @pytest.mark.parametrize("seed", range(40))
    def test_feasible_monotone_bounded(self, seed):
        g = gnp(6 + seed % 10, (0.3, 0.5, 0.8)[seed % 3], seed)
        gamma = ("0.5", "0.7", "0.9")[seed % 3]
        start = degen(g, gamma)
        out = eqc_heu_pro(g, gamma, start, seed)
        assert out.is_eqc(gamma)
        assert len(start) <= len(out) <= brute_max_eqc(g, gamma).size
