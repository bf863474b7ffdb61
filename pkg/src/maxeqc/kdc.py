"""Exact maximum k-defective clique by branch and bound, with a colouring bound."""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graph import DegeneracyOrdering, Graph, degeneracy_ordering, induced_subgraph, pairs

TIME_CHECK_INTERVAL = 1024


class BudgetExhausted(RuntimeError):
    """A search ran out of its time or node allowance."""


@dataclass
class SearchBudget:
    """Cooperative time/node allowance shared by every solver call of one run.

    The clock starts on the first ``start()``; later calls keep the original
    deadline so a framework's repeated solver calls draw on one budget.
    """

    time_limit: float | None = None
    node_limit: int | None = None
    nodes: int = 0
    _deadline: float | None = field(default=None, repr=False)
    _exhausted: bool = field(default=False, repr=False)

    def __post_init__(self):
        if self.time_limit is not None and self.time_limit < 0:
            raise ValueError("time_limit must be non-negative")
        if self.node_limit is not None and self.node_limit < 0:
            raise ValueError("node_limit must be non-negative")

    def start(self) -> SearchBudget:
        if self._deadline is None and self.time_limit is not None:
            self._deadline = time.perf_counter() + self.time_limit
        return self

    @property
    def exhausted(self) -> bool:
        return self._exhausted

    def tick(self) -> bool:
        """Count one node; return True once the allowance is used up."""
        self.nodes += 1
        if self._exhausted:
            return True
        if self.node_limit is not None and self.nodes > self.node_limit:
            self._exhausted = True
        elif (self._deadline is not None and self.nodes % TIME_CHECK_INTERVAL == 0
              and time.perf_counter() > self._deadline):
            self._exhausted = True
        return self._exhausted


@dataclass(frozen=True)
class KdcResult:
    size: int
    witness: tuple[int, ...]
    optimal: bool = True
    nodes: int = 0


@dataclass(frozen=True)
class ColoringSummary:
    color_of: tuple[int, ...]
    color_count: tuple[int, ...]

    @property
    def num_colors(self) -> int:
        return len(self.color_count)


def greedy_color(g: Graph, ordering: DegeneracyOrdering | None = None) -> ColoringSummary:
    """Colour vertices in reverse degeneracy order with the smallest free colour."""
    if ordering is None:
        ordering = degeneracy_ordering(g)
    color = [-1] * g.n
    counts: list[int] = []
    for v in reversed(ordering.order):
        used = {color[u] for u in g.adj[v] if color[u] >= 0}
        c = 0
        while c in used:
            c += 1
        color[v] = c
        if c == len(counts):
            counts.append(0)
        counts[c] += 1
    return ColoringSummary(tuple(color), tuple(counts))


def ub_from_color_counts(counts: Sequence[int], k: int) -> int:
    """Largest number of vertices a k-defective clique can take from these colour classes.

    The ``l``-th vertex taken from one class misses ``l - 1`` edges inside it,
    so filling every class up to ``l`` vertices costs ``sum C(min(l, c), 2)``;
    ``l`` is found by binary search and the leftover budget buys further
    vertices at ``l`` missing edges each.
    """
    if not counts:
        return 0
    lo, hi = 0, max(counts)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if sum(pairs(min(mid, c)) for c in counts) <= k:
            lo = mid
        else:
            hi = mid - 1
    l = lo
    ub = 0
    for c in counts:
        take = min(l, c)
        k -= pairs(take)
        ub += take
    if l > 0:
        ub += min(k // l, sum(1 for c in counts if c > l))
    return ub


def compute_ub(g: Graph, k: int, coloring: ColoringSummary | None = None) -> int:
    """Colouring upper bound on the maximum k-defective clique size of ``g``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if coloring is None:
        coloring = greedy_color(g)
    return ub_from_color_counts(coloring.color_count, k)


def reduce_candidates(g: Graph, lb: int, k: int) -> set[int]:
    """Vertices that may lie in a k-defective clique of more than ``lb`` vertices.

    A member of a size-``s`` k-defective clique has degree at least
    ``s - 1 - k``, so vertices of degree below ``lb - k`` are peeled until
    none remain.
    """
    threshold = lb - k
    alive = [True] * g.n
    if threshold <= 0:
        return set(range(g.n))
    deg = [len(a) for a in g.adj]
    stack = [v for v in range(g.n) if deg[v] < threshold]
    for v in stack:
        alive[v] = False
    while stack:
        v = stack.pop()
        for u in g.adj[v]:
            if alive[u]:
                deg[u] -= 1
                if deg[u] < threshold:
                    alive[u] = False
                    stack.append(u)
    return {v for v in range(g.n) if alive[v]}


def greedy_kdc(g: Graph, k: int, ordering: DegeneracyOrdering | None = None) -> list[int]:
    """Longest suffix of the degeneracy ordering with at most ``k`` missing edges."""
    if g.n == 0:
        return []
    if ordering is None:
        ordering = degeneracy_ordering(g)
    order, pos = ordering.order, ordering.position
    edges = 0
    best = g.n - 1
    for i in range(g.n - 1, -1, -1):
        v = order[i]
        edges += sum(1 for u in g.adj[v] if pos[u] > i)
        if pairs(g.n - i) - edges <= k:
            best = i
    return sorted(order[best:])


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _color_classes(adj: Sequence[int], cand: int) -> list[int]:
    # class-by-class extraction, highest index first; equals sequential greedy
    # colouring in decreasing index order
    classes = []
    rest = cand
    while rest:
        avail = rest
        cls = 0
        while avail:
            v = avail.bit_length() - 1
            bit = 1 << v
            cls |= bit
            avail &= ~(adj[v] | bit)
        rest &= ~cls
        classes.append(cls)
    return classes


class _Search:
    def __init__(self, adj: list[int], k: int, best_size: int, budget: SearchBudget):
        self.adj = adj
        self.n = len(adj)
        self.k = k
        self.best_size = best_size
        self.best_mask = 0
        self.budget = budget
        self.aborted = False
        self.global_color = self._global_coloring()

    def _global_coloring(self) -> list[int]:
        classes = []
        rest = (1 << self.n) - 1
        while rest:
            avail = rest
            cls = 0
            while avail:
                v = avail.bit_length() - 1
                bit = 1 << v
                rest ^= bit
                cls |= bit
                avail &= ~(self.adj[v] | bit)
            classes.append(cls)
        return classes

    def bound(self, cand: int, ncand: int, cost: dict[int, int], slack: int) -> int:
        """Candidates addable under ``slack`` missing edges, by colour class.

        The j-th vertex taken from one class (cheapest first) misses its
        edges to the selection plus j-1 edges inside the class.
        """
        if 2 * ncand < self.n:
            classes = _color_classes(self.adj, cand)
        else:
            classes = [c for c in (cls & cand for cls in self.global_color) if c]
        if len(classes) == ncand:
            marginals = sorted(cost.values())
        else:
            marginals = []
            for cls in classes:
                costs = []
                rest = cls
                while rest:
                    low = rest & -rest
                    rest ^= low
                    costs.append(cost[low.bit_length() - 1])
                costs.sort()
                marginals.extend(c + j for j, c in enumerate(costs))
            marginals.sort()
        spent = 0
        taken = 0
        for c in marginals:
            spent += c
            if spent > slack:
                break
            taken += 1
        return taken

    def degree_bound_fails(self, pool: int, size: int) -> bool:
        """True if no k-defective clique of ``size`` vertices fits inside ``pool``.

        Members of such a clique miss ``size - 1 - deg`` edges each, at most
        ``2k`` in total, and ``deg`` is capped by the degree inside the pool;
        the pool's highest-degree vertices give the smallest possible total.
        """
        if size <= 1:
            return False
        if pool.bit_count() < size:
            return True
        adj = self.adj
        degs = []
        rest = pool
        while rest:
            low = rest & -rest
            degs.append((adj[low.bit_length() - 1] & pool).bit_count())
            rest ^= low
        top = heapq.nlargest(size, degs)
        deficit = 0
        limit = 2 * self.k
        for d in top:
            if d < size - 1:
                deficit += size - 1 - d
                if deficit > limit:
                    return True
        return False

    def run(self) -> None:
        adj, k = self.adj, self.k
        full = (1 << self.n) - 1
        for v in range(self.n - 1, -1, -1):
            if self.aborted:
                return
            cand = full & ~((1 << (v + 1)) - 1)
            if self.best_size + 1 >= k + 2:
                # a k-defective clique with at least k+2 vertices has diameter <= 2
                reach = adj[v]
                for u in _bits(adj[v]):
                    reach |= adj[u]
                cand &= reach
            cand = self._peel(v, cand)
            if cand is None:
                continue
            if self.degree_bound_fails(cand | (1 << v), self.best_size + 1):
                continue
            self.expand(1 << v, 1, 0, cand)

    def _peel(self, v: int, cand: int) -> int | None:
        need = self.best_size - self.k
        if need <= 0:
            return cand if (cand.bit_count() + 1) > self.best_size else None
        adj = self.adj
        vbit = 1 << v
        changed = True
        while changed:
            changed = False
            pool = cand | vbit
            if (adj[v] & pool).bit_count() < need:
                return None
            for u in _bits(cand):
                if (adj[u] & pool).bit_count() < need:
                    cand ^= 1 << u
                    pool ^= 1 << u
                    changed = True
        if (cand | vbit).bit_count() <= self.best_size:
            return None
        return cand

    def expand(self, sel: int, size: int, missing: int, cand: int) -> None:
        adj, k = self.adj, self.k
        while True:
            if self.budget.tick():
                self.aborted = True
                return
            if size > self.best_size:
                self.best_size = size
                self.best_mask = sel
            slack = k - missing
            kept = 0
            costs = {}
            pivot = -1
            pivot_cost = slack + 1
            rest = cand
            while rest:
                low = rest & -rest
                rest ^= low
                u = low.bit_length() - 1
                cost = size - (adj[u] & sel).bit_count()
                if cost <= slack:
                    kept |= low
                    costs[u] = cost
                    if cost < pivot_cost:
                        pivot, pivot_cost = u, cost
            cand = kept
            ncand = len(costs)
            if size + ncand <= self.best_size:
                return
            if size + self.bound(cand, ncand, costs, slack) <= self.best_size:
                return
            bit = 1 << pivot
            cand ^= bit
            self.expand(sel | bit, size + 1, missing + pivot_cost, cand)
            if self.aborted:
                return


def solve_defect(g: Graph, k: int, lb_hint: int = 0, budget: SearchBudget | None = None,
                 hint: Iterable[int] | None = None) -> KdcResult:
    """Maximum k-defective clique of ``g``.

    ``lb_hint`` claims a k-defective clique of that size exists and is only
    used for pruning; a wrong claim costs a second search, never a wrong
    answer. ``hint`` may supply an actual k-defective clique as the starting
    incumbent. When ``budget`` runs out the best clique found so far is
    returned with ``optimal=False``.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if not 0 <= lb_hint <= max(g.n, 0):
        raise ValueError(f"lb_hint {lb_hint} outside [0, {g.n}]")
    if budget is None:
        budget = SearchBudget()
    budget.start()
    nodes_before = budget.nodes
    if g.n == 0:
        return KdcResult(0, (), True, 0)

    incumbent: list[int] = []
    if hint is not None:
        hint = sorted(set(hint))
        if hint and pairs(len(hint)) - g.count_edges_within(hint) <= k:
            incumbent = hint
    greedy = greedy_kdc(g, k)
    if len(greedy) > len(incumbent):
        incumbent = greedy

    floor_size = max(len(incumbent), lb_hint - 1)
    keep = reduce_candidates(g, floor_size, k)
    optimal = True
    if len(keep) > floor_size:
        sub, mapping = induced_subgraph(g, keep)
        order = degeneracy_ordering(sub).order
        relabel = {v: i for i, v in enumerate(order)}
        adj = [0] * sub.n
        for v in range(sub.n):
            mask = 0
            for u in sub.adj[v]:
                mask |= 1 << relabel[u]
            adj[relabel[v]] = mask
        search = _Search(adj, k, floor_size, budget)
        search.run()
        optimal = not search.aborted
        if search.best_mask:
            found = sorted(mapping[order[i]] for i in _bits(search.best_mask))
            if len(found) > len(incumbent):
                incumbent = found

    nodes = budget.nodes - nodes_before
    if optimal and len(incumbent) < floor_size:
        # lb_hint overstated the optimum; search again without it
        again = solve_defect(g, k, 0, budget, incumbent)
        return KdcResult(again.size, again.witness, again.optimal, nodes + again.nodes)
    return KdcResult(len(incumbent), tuple(incumbent), optimal, nodes)
