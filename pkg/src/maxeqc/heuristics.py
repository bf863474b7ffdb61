"""Heuristics that grow large quasi-cliques to seed the exact frameworks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from .graph import (Graph, VertexSelection, closed_neighborhood, degeneracy_ordering, get_k,
                    induced_subgraph, meets_density, pairs, parse_gamma)

DEFAULT_SEED = 0


class EmptySelectionError(RuntimeError):
    """remove_worst_vertex was asked to remove from an empty selection."""


def make_rng(seed: int | np.random.Generator | None = None) -> np.random.Generator:
    """Counter-based (Philox) generator; a Generator passed in is used as is."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.Philox(DEFAULT_SEED if seed is None else seed))


def _pick(candidates: list[int], rng: np.random.Generator) -> int:
    if len(candidates) == 1:
        return candidates[0]
    return candidates[int(rng.integers(len(candidates)))]


@dataclass
class ScoreState:
    """Selected/candidate partition of a working graph plus per-vertex scores.

    ``frontier`` holds the candidates with at least one neighbour selected.
    """

    score: list[int]
    in_selected: list[bool]
    deg_into_S: list[int]
    max_degree: int
    selected: set[int] = field(default_factory=set)
    frontier: set[int] = field(default_factory=set)
    edges: int = 0

    @classmethod
    def start(cls, g: Graph, selected: Iterable[int] = ()) -> ScoreState:
        state = cls([0] * g.n, [False] * g.n, [0] * g.n, g.max_degree)
        for v in selected:
            state.move_in(g, v)
        return state

    @property
    def candidates_left(self) -> int:
        return len(self.in_selected) - len(self.selected)

    @property
    def missing_edges(self) -> int:
        return pairs(len(self.selected)) - self.edges

    def move_in(self, g: Graph, v: int) -> None:
        self.in_selected[v] = True
        self.selected.add(v)
        self.frontier.discard(v)
        self.edges += self.deg_into_S[v]
        self.score[v] = 0
        for u in g.adj[v]:
            self.deg_into_S[u] += 1
            if not self.in_selected[u]:
                self.frontier.add(u)

    def move_out(self, g: Graph, v: int) -> None:
        self.in_selected[v] = False
        self.selected.discard(v)
        self.edges -= self.deg_into_S[v]
        self.score[v] = 0
        if self.deg_into_S[v]:
            self.frontier.add(v)
        for u in g.adj[v]:
            self.deg_into_S[u] -= 1
            if not self.in_selected[u] and self.deg_into_S[u] == 0:
                self.frontier.discard(u)


def update_score(state: ScoreState, g: Graph) -> None:
    """Selected vertices gain their outside degree minus the max degree.

    Candidates gain their number of selected neighbours.
    """
    for v in state.selected:
        state.score[v] += (len(g.adj[v]) - state.deg_into_S[v]) - state.max_degree
    for v in state.frontier:
        state.score[v] += state.deg_into_S[v]


def add_best_vertex(state: ScoreState, g: Graph, rng: np.random.Generator) -> int | None:
    """Move the candidate with most selected neighbours (then highest score) into the selection.

    Returns None when no candidate is left.
    """
    if state.candidates_left == 0:
        return None
    if state.frontier:
        pool = state.frontier
    else:
        pool = [v for v in range(g.n) if not state.in_selected[v]]
    deg, score = state.deg_into_S, state.score
    top = max(deg[v] for v in pool)
    tier = [v for v in pool if deg[v] == top]
    best = max(score[v] for v in tier)
    v = _pick(sorted(u for u in tier if score[u] == best), rng)
    state.move_in(g, v)
    return v


def remove_worst_vertex(state: ScoreState, g: Graph, rng: np.random.Generator) -> int:
    """Move the selected vertex with fewest selected neighbours (then lowest score) out."""
    if not state.selected:
        raise EmptySelectionError("cannot remove from an empty selection")
    deg, score = state.deg_into_S, state.score
    low = min(deg[v] for v in state.selected)
    tier = [v for v in state.selected if deg[v] == low]
    worst = min(score[v] for v in tier)
    v = _pick(sorted(u for u in tier if score[u] == worst), rng)
    state.move_out(g, v)
    return v


def degen(g: Graph, gamma: Fraction | str | float) -> VertexSelection:
    """Longest suffix of the degeneracy ordering that induces a quasi-clique."""
    gamma = parse_gamma(gamma)
    if g.n == 0:
        return VertexSelection(g)
    ordering = degeneracy_ordering(g)
    order, pos = ordering.order, ordering.position
    edges = 0
    best_i, best_edges = g.n - 1, 0
    for i in range(g.n - 1, -1, -1):
        v = order[i]
        edges += sum(1 for u in g.adj[v] if pos[u] > i)
        if meets_density(edges, g.n - i, gamma):
            best_i, best_edges = i, edges
    return VertexSelection(g, set(order[best_i:]), best_edges)


def degen_opt(g: Graph, gamma: Fraction | str | float) -> VertexSelection:
    """Best of ``degen`` on the whole graph and on every closed neighbourhood."""
    gamma = parse_gamma(gamma)
    best = degen(g, gamma)
    for u in range(g.n):
        if len(g.adj[u]) + 1 <= len(best):
            continue
        sub, mapping = induced_subgraph(g, closed_neighborhood(g, [u]))
        found = degen(sub, gamma)
        if len(found) > len(best):
            best = VertexSelection(g, {mapping[v] for v in found.members}, found.internal_edges)
    return best


def _as_members(g: Graph, solution: Iterable[int] | VertexSelection) -> list[int]:
    members = sorted(solution.members if isinstance(solution, VertexSelection) else set(solution))
    for v in members:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    return members


def eqc_heu(g: Graph, gamma: Fraction | str | float, seed_solution: Iterable[int] | VertexSelection,
            rng: int | np.random.Generator | None = None) -> VertexSelection:
    """Grow a quasi-clique from every vertex of a feasible seed by add-two/remove-one moves.

    A walk stops when its selection misses more edges than a quasi-clique one
    vertex larger than the best so far may, when no candidate is left, or
    after ``4 * |best|**2`` moves. Never returns less than the seed.
    """
    gamma = parse_gamma(gamma)
    rng = make_rng(rng)
    seed = _as_members(g, seed_solution)
    best_edges = g.count_edges_within(seed)
    if not meets_density(best_edges, len(seed), gamma):
        raise ValueError("seed solution is not a quasi-clique for this gamma")
    best = list(seed)
    k = get_k(len(best) + 1, gamma)

    for u in seed:
        state = ScoreState.start(g, [u])
        moves = 0
        while state.missing_edges <= k:
            size = len(state.selected)
            if size > len(best) and meets_density(state.edges, size, gamma):
                best, best_edges = sorted(state.selected), state.edges
                k = get_k(len(best) + 1, gamma)
            if moves >= 4 * len(best) ** 2:
                break
            moves += 1
            if (add_best_vertex(state, g, rng) is None
                    or add_best_vertex(state, g, rng) is None):
                size = len(state.selected)
                if size > len(best) and meets_density(state.edges, size, gamma):
                    best, best_edges = sorted(state.selected), state.edges
                    k = get_k(len(best) + 1, gamma)
                break
            remove_worst_vertex(state, g, rng)
            update_score(state, g)
    return VertexSelection(g, set(best), best_edges)


def eqc_heu_pro(g: Graph, gamma: Fraction | str | float,
                seed_solution: Iterable[int] | VertexSelection,
                rng: int | np.random.Generator | None = None) -> VertexSelection:
    """Rerun ``eqc_heu`` inside the closed neighbourhood of the solution until it stops growing."""
    gamma = parse_gamma(gamma)
    rng = make_rng(rng)
    current = _as_members(g, seed_solution)
    if not meets_density(g.count_edges_within(current), len(current), gamma):
        raise ValueError("seed solution is not a quasi-clique for this gamma")
    while current:
        sub, mapping = induced_subgraph(g, closed_neighborhood(g, current))
        index = {v: i for i, v in enumerate(mapping)}
        found = eqc_heu(sub, gamma, [index[v] for v in current], rng)
        if len(found) <= len(current):
            break
        current = sorted(mapping[v] for v in found.members)
    return VertexSelection.of(g, current)
