"""Exact maximum quasi-clique via sequences of maximum k-defective clique problems.

Every framework here rests on one monotone test: ``check(s)`` holds exactly
when ``s`` does not exceed the optimum, where ``check(s)`` asks whether the
maximum ``get_k(s)``-defective clique has at least ``s`` vertices.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from .graph import Graph, get_k, is_eqc, is_k_defective, parse_gamma
from .heuristics import degen, degen_opt, eqc_heu_pro, make_rng
from .kdc import BudgetExhausted, KdcResult, SearchBudget, compute_ub, greedy_color, solve_defect

__all__ = [
    "CheckResult", "FrameworkResult", "IterationTrace", "Memo", "MemoEntry", "TraceEvent",
    "check", "edge_count_bound", "eqc_bu", "eqc_pro", "eqc_td", "get_k", "upper_bound",
]


@dataclass(frozen=True)
class MemoEntry:
    size: int
    witness: tuple[int, ...]
    optimal: bool = True


@dataclass
class Memo:
    """Maximum k-defective clique results keyed by k."""

    entries: dict[int, MemoEntry] = field(default_factory=dict)
    hits: int = 0

    def __contains__(self, k: int) -> bool:
        return k in self.entries

    def __getitem__(self, k: int) -> MemoEntry:
        return self.entries[k]

    def __len__(self) -> int:
        return len(self.entries)

    def store(self, k: int, result: KdcResult) -> MemoEntry:
        entry = MemoEntry(result.size, result.witness, result.optimal)
        self.entries[k] = entry
        return entry

    def best_below(self, k: int) -> MemoEntry | None:
        """Entry with the largest key not above ``k``; its witness is also k-defective."""
        keys = [key for key in self.entries if key <= k]
        return self.entries[max(keys)] if keys else None


@dataclass(frozen=True)
class TraceEvent:
    phase: str
    s: int
    k: int
    s_prime: int
    seconds: float
    memo_hit: bool = False
    expanded: int | None = None


@dataclass
class IterationTrace:
    events: list[TraceEvent] = field(default_factory=list)

    @property
    def check_calls(self) -> int:
        return sum(1 for e in self.events if e.phase in ("doubling", "halving"))

    @property
    def memo_hits(self) -> int:
        return sum(1 for e in self.events if e.memo_hit)

    def to_records(self) -> list[dict]:
        return [asdict(e) for e in self.events]


@dataclass
class FrameworkResult:
    optimal_size: int
    witness: tuple[int, ...]
    trace: IterationTrace
    gamma: Fraction
    optimal: bool = True
    upper_bound: int | None = None
    phase_seconds: dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class CheckResult:
    feasible: bool
    s_prime: int
    witness: tuple[int, ...]
    k: int
    memo_hit: bool = False


def check(g: Graph, gamma: Fraction | str | float, s: int, memo: Memo | None = None,
          budget: SearchBudget | None = None, hint: Iterable[int] | None = None) -> CheckResult:
    """Is there a ``get_k(s)``-defective clique with at least ``s`` vertices?

    The solver always runs to optimality so the answer can be memoised;
    exhausting ``budget`` raises ``BudgetExhausted``.
    """
    gamma = parse_gamma(gamma)
    if not 1 <= s <= g.n:
        raise ValueError(f"probe size {s} outside [1, {g.n}]")
    k = get_k(s, gamma)
    if memo is not None and k in memo:
        memo.hits += 1
        entry = memo[k]
        return CheckResult(entry.size >= s, entry.size, entry.witness, k, True)
    hints = [tuple(hint)] if hint is not None else []
    if memo is not None and (below := memo.best_below(k)) is not None:
        hints.append(below.witness)
    hints = [h for h in hints if is_k_defective(g, h, k)]
    result = solve_defect(g, k, budget=budget, hint=max(hints, key=len, default=None))
    if not result.optimal:
        raise BudgetExhausted(f"solver budget exhausted at k={k}")
    if memo is not None:
        memo.store(k, result)
    return CheckResult(result.size >= s, result.size, result.witness, k)


def edge_count_bound(m: int, gamma: Fraction | str | float) -> int:
    """Largest size u with gamma * C(u, 2) <= m: no quasi-clique with m edges can be bigger."""
    gamma = parse_gamma(gamma)
    # largest u with gamma * u(u-1) <= 2m, found exactly
    lo, hi = 1, 2
    while gamma.numerator * hi * (hi - 1) <= 2 * m * gamma.denominator:
        hi *= 2
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if gamma.numerator * mid * (mid - 1) <= 2 * m * gamma.denominator:
            lo = mid
        else:
            hi = mid - 1
    return lo


def upper_bound(g: Graph, gamma: Fraction | str | float, trace: list[int] | None = None) -> int:
    """Upper bound on the maximum quasi-clique size by iterating the colouring bound.

    Starting from the edge-count bound, ``k`` is lowered to ``get_k(ub)``
    and ``ub`` recomputed until ``k`` stops decreasing. ``trace`` (if given)
    receives the successive bounds.
    """
    gamma = parse_gamma(gamma)
    if g.n == 0:
        return 0
    coloring = greedy_color(g)
    ub = edge_count_bound(g.m, gamma)
    if trace is not None:
        trace.append(ub)
    k = get_k(ub, gamma)
    while True:
        ub = compute_ub(g, k, coloring)
        if trace is not None:
            trace.append(ub)
        k_next = get_k(ub, gamma)
        if k_next >= k:
            return ub
        k = k_next


def _singleton(g: Graph) -> tuple[int, ...]:
    return (0,) if g.n else ()


def eqc_td(g: Graph, gamma: Fraction | str | float,
           budget: SearchBudget | None = None) -> FrameworkResult:
    """Top-down search from an upper bound.

    Alternates k = get_k(s) and s = solve_defect(k) until k repeats.
    """
    gamma = parse_gamma(gamma)
    budget = (budget or SearchBudget()).start()
    trace = IterationTrace()
    t0 = time.perf_counter()
    if g.n == 0:
        return FrameworkResult(0, (), trace, gamma)
    s = upper_bound(g, gamma)
    t_ub = time.perf_counter() - t0
    k = get_k(s, gamma)
    while True:
        t = time.perf_counter()
        result = solve_defect(g, k, budget=budget)
        if not result.optimal:
            fallback = degen(g, gamma)
            return FrameworkResult(len(fallback), tuple(fallback), trace, gamma, optimal=False,
                                   upper_bound=s, phase_seconds={"upper_bound": t_ub})
        trace.events.append(TraceEvent("td", s, k, result.size, time.perf_counter() - t))
        s = result.size
        k_next = get_k(s, gamma)
        if k_next == k:
            return FrameworkResult(s, result.witness, trace, gamma, upper_bound=trace.events[0].s,
                                   phase_seconds={"upper_bound": t_ub,
                                                  "search": time.perf_counter() - t0 - t_ub})
        k = k_next


class _Doubling:
    """Shared doubling/halving driver for the bottom-up frameworks."""

    def __init__(self, g: Graph, gamma: Fraction, budget: SearchBudget, memo: Memo | None,
                 expand=None, raise_to_found: bool = False):
        self.raise_to_found = raise_to_found
        self.g = g
        self.gamma = gamma
        self.budget = budget
        self.memo = memo
        self.expand = expand
        self.trace = IterationTrace()
        self.best: tuple[int, ...] = ()

    def offer(self, witness: Iterable[int]) -> None:
        witness = tuple(sorted(witness))
        if len(witness) > len(self.best) and is_eqc(self.g, witness, self.gamma):
            self.best = witness

    def probe(self, s: int, phase: str) -> tuple[bool, int]:
        """Run one check at ``s``; return (feasible, size to record as lower bound)."""
        t = time.perf_counter()
        res = check(self.g, self.gamma, s, self.memo, self.budget, hint=self.best)
        reported = res.s_prime
        expanded = None
        if res.feasible:
            # k-defective clique of size >= s with k = get_k(s) is a quasi-clique
            self.offer(res.witness)
            if self.expand is not None:
                grown = self.expand(res.witness)
                self.offer(grown)
                expanded = len(grown)
                reported = max(reported, expanded)
        self.trace.events.append(TraceEvent(phase, s, res.k, res.s_prime,
                                            time.perf_counter() - t, res.memo_hit, expanded))
        return reported >= s, (reported if self.raise_to_found else s)

    def run(self, lb: int) -> int:
        n = self.g.n
        lb_new = lb
        gap = 1
        while lb + gap <= n:
            ok, got = self.probe(lb + gap, "doubling")
            if not ok:
                break
            lb_new = max(lb_new, got)
            gap *= 2
        ub_new = min(lb + gap - 1, n)
        while lb_new < ub_new:
            mid = (lb_new + ub_new + 1) // 2
            ok, got = self.probe(mid, "halving")
            if ok:
                lb_new = max(mid, min(got, ub_new))
            else:
                ub_new = mid - 1
        return lb_new


def _finish(driver: _Doubling, size: int, gamma: Fraction, t0: float, phases: dict,
            optimal: bool = True) -> FrameworkResult:
    g = driver.g
    if len(driver.best) != size and optimal:
        # only reachable for a caller-supplied lower bound without witness
        res = solve_defect(g, get_k(size, gamma), lb_hint=size, budget=driver.budget)
        driver.trace.events.append(TraceEvent("witness", size, get_k(size, gamma), res.size, 0.0))
        driver.offer(res.witness)
    phases["total"] = time.perf_counter() - t0
    return FrameworkResult(len(driver.best) if not optimal else size, driver.best,
                           driver.trace, gamma, optimal, phase_seconds=phases)


def eqc_bu(g: Graph, gamma: Fraction | str | float, lb_init: int = 1,
           budget: SearchBudget | None = None,
           witness: Iterable[int] | None = None) -> FrameworkResult:
    """Bottom-up doubling then halving over the monotone check.

    ``lb_init`` must be a size known to be achievable; pass the quasi-clique
    proving it as ``witness`` to avoid an extra solver call at the end.
    """
    gamma = parse_gamma(gamma)
    budget = (budget or SearchBudget()).start()
    t0 = time.perf_counter()
    driver = _Doubling(g, gamma, budget, memo=None)
    if g.n == 0:
        return FrameworkResult(0, (), driver.trace, gamma)
    if not 1 <= lb_init <= g.n:
        raise ValueError(f"lb_init {lb_init} outside [1, {g.n}]")
    driver.offer(_singleton(g))
    if witness is not None:
        witness = tuple(sorted(set(witness)))
        if len(witness) < lb_init or not is_eqc(g, witness, gamma):
            raise ValueError("witness does not certify lb_init")
        driver.offer(witness)
    try:
        size = driver.run(lb_init)
    except BudgetExhausted:
        return _finish(driver, len(driver.best), gamma, t0, {}, optimal=False)
    return _finish(driver, size, gamma, t0, {})


def eqc_pro(g: Graph, gamma: Fraction | str | float,
            rng: int | np.random.Generator | None = None,
            budget: SearchBudget | None = None, use_memo: bool = True,
            use_heuristic: bool = True) -> FrameworkResult:
    """Heuristic lower bound, then doubling/halving with memoised solver calls and expansion.

    ``use_memo=False`` re-solves every probe; ``use_heuristic=False`` drops
    both the initial heuristic and the expansion step.
    """
    gamma = parse_gamma(gamma)
    rng = make_rng(rng)
    budget = (budget or SearchBudget()).start()
    t0 = time.perf_counter()
    expand = (lambda w: eqc_heu_pro(g, gamma, w, rng).sorted()) if use_heuristic else None
    driver = _Doubling(g, gamma, budget, Memo() if use_memo else None, expand,
                       raise_to_found=True)
    if g.n == 0:
        return FrameworkResult(0, (), driver.trace, gamma)
    phases = {}
    driver.offer(_singleton(g))
    if use_heuristic:
        seed = degen_opt(g, gamma)
        driver.offer(seed.members)
        driver.offer(eqc_heu_pro(g, gamma, seed, rng).members)
    phases["heuristic"] = time.perf_counter() - t0
    lb = len(driver.best)
    if lb == g.n:
        phases["total"] = phases["heuristic"]
        return FrameworkResult(lb, driver.best, driver.trace, gamma, phase_seconds=phases)
    try:
        size = driver.run(lb)
    except BudgetExhausted:
        return _finish(driver, len(driver.best), gamma, t0, phases, optimal=False)
    phases["search"] = time.perf_counter() - t0 - phases["heuristic"]
    return _finish(driver, size, gamma, t0, phases)
