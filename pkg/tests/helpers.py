"""Graph builders shared by the test modules."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from maxeqc.graph import Graph

CORPUS_SIZE = 507
DENSITIES = (0.3, 0.5, 0.8)
GAMMAS = ("0.5", "0.7", "0.9", "0.95")

# one "criterion N: PASS|FAIL|SKIP|INFO ..." line per acceptance test, printed at session end
ACCEPTANCE_LINES: list[str] = []


def report(number: int, ok: bool | None, detail: str, status: str | None = None) -> None:
    if status is None:
        status = "SKIP" if ok is None else ("PASS" if ok else "FAIL")
    line = f"criterion {number}: {status} {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


@dataclass(frozen=True)
class CorpusGraph:
    name: str
    density: float
    graph: Graph


def gnp(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(n, edges)


def corpus(count: int = CORPUS_SIZE) -> list[CorpusGraph]:
    """Deterministic G(n, p) instances, n cycling through 4..16 and p through DENSITIES."""
    out = []
    for i in range(count):
        n = 4 + i % 13
        p = DENSITIES[(i // 13) % 3]
        out.append(CorpusGraph(f"gnp-{i}-n{n}-p{p}", p, gnp(n, p, 1000 + i)))
    return out


def planted(n: int, size: int, p_in: float, avg_deg: float, seed: int) -> Graph:
    """Sparse random background with a dense random block on ``size`` vertices."""
    rng = random.Random(seed)
    block = rng.sample(range(n), size)
    edges = set()
    for i, u in enumerate(block):
        for v in block[i + 1:]:
            if rng.random() < p_in:
                edges.add((min(u, v), max(u, v)))
    remaining = int(avg_deg * n / 2)
    while remaining:
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            edges.add((min(u, v), max(u, v)))
            remaining -= 1
    return Graph.from_edges(n, edges)


def complete(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def k5_minus_edge() -> Graph:
    return Graph.from_edges(5, [e for e in itertools.combinations(range(5), 2) if e != (3, 4)])


def triangle() -> Graph:
    return Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])


def triangle_pendant() -> Graph:
    # a=0, b=1, c=2 form the triangle, d=3 hangs off c
    return Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])


def star() -> Graph:
    return Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def edgeless(n: int) -> Graph:
    return Graph.from_edges(n, [])


def complete_multipartite(*parts: int) -> Graph:
    owner = [i for i, size in enumerate(parts) for _ in range(size)]
    n = len(owner)
    return Graph.from_edges(n, [(u, v) for u, v in itertools.combinations(range(n), 2)
                                if owner[u] != owner[v]])
