"""Exhaustive ground truth for small graphs.

Every subset's internal edge count is tabulated once; the maximum
quasi-clique and maximum k-defective clique are then read off the table.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .graph import Graph, parse_gamma


class OracleLimitError(ValueError):
    pass


@dataclass(frozen=True)
class OracleLimit:
    max_n: int = 20
    reason: str = "exhaustive search refuses graphs with more than {max_n} vertices (n={n})"

    def check(self, g: Graph) -> None:
        if g.n > self.max_n:
            raise OracleLimitError(self.reason.format(max_n=self.max_n, n=g.n))


@dataclass(frozen=True)
class OracleResult:
    size: int
    witness: tuple[int, ...]


DEFAULT_LIMIT = OracleLimit()


def subset_tables(g: Graph, limit: OracleLimit = DEFAULT_LIMIT) -> tuple[np.ndarray, np.ndarray]:
    """Return (edge count, size) of ``G[mask]`` for every mask in ``0..2**n - 1``."""
    limit.check(g)
    n = g.n
    edges = np.zeros(1 << n, dtype=np.int64)
    masks = g.masks
    for i in range(n):
        lower = np.arange(1 << i, dtype=np.int64)
        edges[1 << i: 1 << (i + 1)] = edges[: 1 << i] + np.bitwise_count(lower & masks[i])
    sizes = np.bitwise_count(np.arange(1 << n, dtype=np.int64)).astype(np.int64)
    return edges, sizes


def _best(feasible: np.ndarray, sizes: np.ndarray, n: int) -> OracleResult:
    idx = np.flatnonzero(feasible)
    top = int(sizes[idx].max())
    tops = idx[sizes[idx] == top]
    witness = min(tuple(i for i in range(n) if (int(m) >> i) & 1)
                  for m in tops)
    return OracleResult(top, witness)


def brute_max_eqc(g: Graph, gamma: Fraction | str | float,
                  limit: OracleLimit = DEFAULT_LIMIT, tables=None) -> OracleResult:
    """Largest vertex subset with at least ``gamma * C(s, 2)`` internal edges.

    Among maximum subsets the lexicographically smallest sorted tuple is returned.
    """
    gamma = parse_gamma(gamma)
    if g.n == 0:
        return OracleResult(0, ())
    edges, sizes = tables if tables is not None else subset_tables(g, limit)
    feasible = 2 * edges * gamma.denominator >= gamma.numerator * sizes * (sizes - 1)
    return _best(feasible, sizes, g.n)


def brute_max_kdc(g: Graph, k: int, limit: OracleLimit = DEFAULT_LIMIT,
                  tables=None) -> OracleResult:
    """Largest vertex subset missing at most ``k`` internal edges."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if g.n == 0:
        return OracleResult(0, ())
    edges, sizes = tables if tables is not None else subset_tables(g, limit)
    feasible = sizes * (sizes - 1) // 2 - edges <= k
    return _best(feasible, sizes, g.n)
