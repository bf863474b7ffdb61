"""Graph representation, loading, degeneracy ordering and density predicates."""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

MAX_VERTICES = 1 << 31

_DECIMAL = re.compile(r"^[+]?(\d+(\.\d*)?|\.\d+)$")


class GraphFormatError(ValueError):
    """Raised when a graph file cannot be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def parse_gamma(value: str | Fraction | float | int) -> Fraction:
    """Convert a density threshold to an exact fraction in (0, 1).

    Strings must be plain decimal literals ("0.95"); scientific notation is
    rejected. Floats are converted through their shortest repr, so 0.95 maps
    to 95/100 rather than to its binary approximation.
    """
    if isinstance(value, Fraction):
        gamma = value
    elif isinstance(value, str):
        text = value.strip()
        if not _DECIMAL.match(text):
            raise ValueError(f"gamma must be a decimal literal, got {value!r}")
        gamma = Fraction(text)
    elif isinstance(value, bool):
        raise TypeError("gamma cannot be a bool")
    elif isinstance(value, int):
        gamma = Fraction(value)
    elif isinstance(value, float):
        gamma = Fraction(repr(value))
    else:
        raise TypeError(f"unsupported gamma type {type(value).__name__}")
    if not 0 < gamma < 1:
        raise ValueError(f"gamma must lie strictly between 0 and 1, got {gamma}")
    return gamma


def pairs(s: int) -> int:
    return s * (s - 1) // 2


def meets_density(edges: int, size: int, gamma: Fraction) -> bool:
    """Exact test of ``edges >= gamma * C(size, 2)``."""
    return 2 * edges * gamma.denominator >= gamma.numerator * size * (size - 1)


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected simple graph.

    ``adj[v]`` is the ascending tuple of neighbours of ``v``. ``labels[v]``
    is the identifier the vertex had in the source file.
    """

    n: int
    m: int
    adj: tuple[tuple[int, ...], ...]
    labels: tuple[int, ...] | None = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   labels: Sequence[int] | None = None) -> Graph:
        """Build a graph on ``0..n-1``; loops and duplicates are dropped."""
        if n < 0 or n > MAX_VERTICES:
            raise ValueError(f"vertex count {n} out of range")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u != v:
                nbrs[u].add(v)
                nbrs[v].add(u)
        adj = tuple(tuple(sorted(s)) for s in nbrs)
        m = sum(len(a) for a in adj) // 2
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise ValueError("label table length must equal n")
        return cls(n, m, adj, labels)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighbourhoods as integer bitsets."""
        out = []
        for nb in self.adj:
            mask = 0
            for u in nb:
                mask |= 1 << u
            out.append(mask)
        return tuple(out)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @cached_property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return (self.masks[u] >> v) & 1 == 1

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def label(self, v: int) -> int:
        return self.labels[v] if self.labels is not None else v

    def count_edges_within(self, vertices: Iterable[int]) -> int:
        mask = 0
        vs = list(vertices)
        for v in vs:
            mask |= 1 << v
        masks = self.masks
        return sum((masks[v] & mask).bit_count() for v in vs) // 2

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass
class VertexSelection:
    """A vertex subset with its internal and missing edge counts kept in sync."""

    graph: Graph
    members: set[int] = field(default_factory=set)
    internal_edges: int = 0

    @classmethod
    def of(cls, graph: Graph, vertices: Iterable[int]) -> VertexSelection:
        members = set(vertices)
        for v in members:
            if not 0 <= v < graph.n:
                raise ValueError(f"vertex {v} out of range")
        return cls(graph, members, graph.count_edges_within(members))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def __contains__(self, v: int) -> bool:
        return v in self.members

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def missing_edges(self) -> int:
        return pairs(len(self.members)) - self.internal_edges

    def add(self, v: int) -> None:
        if v in self.members:
            return
        self.internal_edges += sum(1 for u in self.graph.adj[v] if u in self.members)
        self.members.add(v)

    def remove(self, v: int) -> None:
        self.members.remove(v)
        self.internal_edges -= sum(1 for u in self.graph.adj[v] if u in self.members)

    def is_eqc(self, gamma: Fraction | str | float) -> bool:
        return meets_density(self.internal_edges, len(self.members), parse_gamma(gamma))

    def sorted(self) -> list[int]:
        return sorted(self.members)


@dataclass(frozen=True)
class DegeneracyOrdering:
    order: tuple[int, ...]
    position: tuple[int, ...]
    core: tuple[int, ...]

    @property
    def degeneracy(self) -> int:
        return max(self.core, default=0)


@dataclass
class LoadReport:
    path: str
    fmt: str
    n: int
    m: int
    index_base: int
    dropped_loops: int
    dropped_duplicates: int
    lines: int

    def as_text(self) -> str:
        return "\n".join(f"{k}: {v}" for k, v in self.__dict__.items())


def degeneracy_ordering(g: Graph) -> DegeneracyOrdering:
    """Repeatedly remove a minimum-degree vertex, smallest index first on ties."""
    deg = [len(a) for a in g.adj]
    heap = [(d, v) for v, d in enumerate(deg)]
    heapq.heapify(heap)
    removed = [False] * g.n
    order: list[int] = []
    core = [0] * g.n
    k = 0
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        k = max(k, d)
        core[v] = k
        order.append(v)
        for u in g.adj[v]:
            if not removed[u]:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], u))
    position = [0] * g.n
    for i, v in enumerate(order):
        position[v] = i
    return DegeneracyOrdering(tuple(order), tuple(position), tuple(core))


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Return ``G[vertices]`` and the list mapping new indices to old ones."""
    keep = sorted(set(vertices))
    index = {}
    for i, v in enumerate(keep):
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for n={g.n}")
        index[v] = i
    adj = tuple(tuple(index[u] for u in g.adj[v] if u in index) for v in keep)
    m = sum(len(a) for a in adj) // 2
    labels = tuple(g.label(v) for v in keep) if g.labels is not None else None
    return Graph(len(keep), m, adj, labels), keep


def closed_neighborhood(g: Graph, vertices: Iterable[int]) -> set[int]:
    out = set()
    for v in vertices:
        out.add(v)
        out.update(g.adj[v])
    return out


def is_eqc(g: Graph, vertices: Iterable[int], gamma: Fraction | str | float) -> bool:
    """True iff ``G[vertices]`` has at least ``gamma * C(|vertices|, 2)`` edges."""
    vs = set(vertices)
    return meets_density(g.count_edges_within(vs), len(vs), parse_gamma(gamma))


def is_k_defective(g: Graph, vertices: Iterable[int], k: int) -> bool:
    vs = set(vertices)
    return pairs(len(vs)) - g.count_edges_within(vs) <= k


def _read_pairs(lines: Iterable[str], matrix_market: bool
                ) -> tuple[list[tuple[int, int]], int | None]:
    edges = []
    dim = None
    header_pending = matrix_market
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line[0] in "%#":
            continue
        parts = line.split()
        if header_pending:
            # rows cols nnz
            header_pending = False
            try:
                rows, cols, _ = (int(x) for x in parts[:3])
            except ValueError:
                raise GraphFormatError("malformed dimension line", lineno) from None
            dim = max(rows, cols)
            continue
        if len(parts) < 2:
            raise GraphFormatError(f"expected two vertex ids, got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"non-integer vertex id in {line!r}", lineno) from None
        if u < 0 or v < 0:
            raise GraphFormatError("negative vertex id", lineno)
        if u >= MAX_VERTICES or v >= MAX_VERTICES:
            raise GraphFormatError("vertex id overflow", lineno)
        edges.append((u, v))
    if header_pending:
        raise GraphFormatError("missing dimension line")
    return edges, dim


def load_graph(path: str | Path, fmt: str = "auto", *,
               with_report: bool = False) -> Graph | tuple[Graph, LoadReport]:
    """Read an edge list or Matrix Market coordinate file.

    Ids are taken as 1-based when the smallest id seen is at least 1 (always
    for Matrix Market) and 0-based otherwise; vertex ``i`` of the result is
    original id ``i + base`` and ``n`` runs up to the largest id seen (or the
    declared dimension), so isolated ids in between are kept. Extra columns
    such as weights are ignored and direction is discarded.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except (OSError, UnicodeDecodeError) as exc:
        raise GraphFormatError(f"cannot read {path}: {exc}") from exc
    lines = text.splitlines()
    if fmt == "auto":
        fmt = "matrix-market" if lines and lines[0].startswith("%%MatrixMarket") else "edge-list"
    if fmt not in ("edge-list", "matrix-market"):
        raise ValueError(f"unknown graph format {fmt!r}")
    mm = fmt == "matrix-market"
    if mm:
        if not lines or not lines[0].startswith("%%MatrixMarket"):
            raise GraphFormatError("missing %%MatrixMarket header", 1)
        if "coordinate" not in lines[0].lower():
            raise GraphFormatError("only coordinate Matrix Market files are supported", 1)
    raw_edges, dim = _read_pairs(lines, mm)

    lo = min((min(e) for e in raw_edges), default=1)
    hi = max((max(e) for e in raw_edges), default=-1)
    base = 1 if mm or lo >= 1 else 0
    if mm and lo < 1:
        raise GraphFormatError("Matrix Market ids are 1-based")
    n = max(hi - base + 1, 0)
    if dim is not None:
        if hi > dim:
            raise GraphFormatError(f"vertex id {hi} exceeds declared dimension {dim}")
        n = dim
    if n > MAX_VERTICES:
        raise GraphFormatError(f"vertex count {n} overflows")
    loops = 0
    seen = set()
    for u, v in raw_edges:
        if u == v:
            loops += 1
            continue
        u, v = u - base, v - base
        seen.add((u, v) if u < v else (v, u))
    dupes = len(raw_edges) - loops - len(seen)
    edges = sorted(seen)
    g = Graph.from_edges(n, edges, labels=range(base, base + n))
    if not with_report:
        return g
    report = LoadReport(str(path), fmt, g.n, g.m, base, loops, dupes, len(lines))
    return g, report


def get_k(s: int, gamma: Fraction | str | float) -> int:
    """Missing edges allowed in a quasi-clique on ``s`` vertices: floor((1 - gamma) * C(s, 2))."""
    if s < 0:
        raise ValueError("s must be non-negative")
    gamma = parse_gamma(gamma)
    return (gamma.denominator - gamma.numerator) * s * (s - 1) // (2 * gamma.denominator)
