"""Command-line entry point: solve, heuristic, oracle, verify and bench."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from pathlib import Path

from .frameworks import eqc_bu, eqc_pro, eqc_td
from .graph import Graph, GraphFormatError, get_k, load_graph, pairs, parse_gamma
from .heuristics import degen_opt, eqc_heu_pro, make_rng
from .kdc import SearchBudget, solve_defect
from .oracle import OracleLimitError, brute_max_eqc, brute_max_kdc

log = logging.getLogger("maxeqc")

ALGORITHMS = ("pro", "td", "bu", "heu", "kdc", "oracle")
BENCH_COLUMNS = ("instance", "n", "m", "gamma", "algo", "s_star", "time_s", "solved")
DEFAULT_TIME_LIMIT = 10800.0
GRAPH_SUFFIXES = {".txt", ".edges", ".mtx", ".el", ".edgelist"}

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_INPUT = 2
EXIT_TIMEOUT = 3


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    graph: str
    gamma: str | None = None
    algorithm: str = "pro"
    k: int | None = None
    time_limit: float = DEFAULT_TIME_LIMIT
    seed: int = 0
    output: str = "json"
    witness_out: str | None = None

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise InputError(f"unknown algorithm {self.algorithm!r}")
        if self.time_limit <= 0:
            raise InputError("time limit must be positive")
        if self.algorithm == "kdc":
            if self.k is None or self.k < 0:
                raise InputError("--algo kdc needs a non-negative --k")
        else:
            if self.gamma is None:
                raise InputError("--gamma is required")
            self.gamma_fraction()

    def gamma_fraction(self) -> Fraction:
        try:
            return parse_gamma(self.gamma)
        except (TypeError, ValueError) as exc:
            raise InputError(str(exc)) from None


@dataclass
class RunReport:
    instance: str
    n: int
    m: int
    gamma: str | None
    algo: str
    s_star: int
    time_s: float
    solved: bool
    check_calls: int = 0
    memo_hits: int = 0
    k: int | None = None
    witness: list[int] | None = None
    phase_seconds: dict[str, float] = field(default_factory=dict)

    @property
    def lower_bound_only(self) -> bool:
        return not self.solved

    def to_dict(self) -> dict:
        out = {f.name: getattr(self, f.name) for f in fields(self) if f.name != "phase_seconds"}
        out["lower_bound_only"] = self.lower_bound_only
        for name, secs in self.phase_seconds.items():
            out[f"phase_{name}_s"] = secs
        return out

    @classmethod
    def from_dict(cls, data: dict) -> RunReport:
        names = {f.name for f in fields(cls)}
        kwargs = {k: v for k, v in data.items() if k in names}
        kwargs["phase_seconds"] = {k[len("phase_"):-2]: v for k, v in data.items()
                                   if k.startswith("phase_") and k.endswith("_s")}
        return cls(**kwargs)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def bench_row(self) -> dict:
        return {c: getattr(self, c) for c in BENCH_COLUMNS}


def _load(path: str) -> Graph:
    try:
        return load_graph(path)
    except (GraphFormatError, ValueError) as exc:
        raise InputError(str(exc)) from None


def run(config: RunConfig, graph: Graph | None = None) -> RunReport:
    """Load the graph, run the configured algorithm and describe the outcome."""
    g = graph if graph is not None else _load(config.graph)
    budget = SearchBudget(time_limit=config.time_limit)
    t0 = time.perf_counter()
    calls = hits = 0
    phases: dict[str, float] = {}
    k = None
    algo = config.algorithm
    if algo == "kdc":
        k = config.k
        res = solve_defect(g, k, budget=budget)
        size, witness, solved = res.size, res.witness, res.optimal
    elif algo == "oracle":
        gamma = config.gamma_fraction()
        try:
            res = brute_max_eqc(g, gamma)
        except OracleLimitError as exc:
            raise InputError(str(exc)) from None
        size, witness, solved = res.size, res.witness, True
    elif algo == "heu":
        gamma = config.gamma_fraction()
        rng = make_rng(config.seed)
        seed = degen_opt(g, gamma)
        phases["degen_opt"] = time.perf_counter() - t0
        found = eqc_heu_pro(g, gamma, seed, rng) if len(seed) else seed
        size, witness, solved = len(found), tuple(found), False
    else:
        gamma = config.gamma_fraction()
        if algo == "pro":
            result = eqc_pro(g, gamma, rng=config.seed, budget=budget)
        elif algo == "bu":
            result = eqc_bu(g, gamma, budget=budget)
        else:
            result = eqc_td(g, gamma, budget=budget)
        size, witness, solved = result.optimal_size, result.witness, result.optimal
        calls, hits = result.trace.check_calls, result.trace.memo_hits
        phases.update(result.phase_seconds)
    elapsed = time.perf_counter() - t0
    return RunReport(
        instance=Path(config.graph).name, n=g.n, m=g.m, gamma=config.gamma, algo=algo,
        s_star=size, time_s=round(elapsed, 6), solved=solved, check_calls=calls,
        memo_hits=hits, k=k, witness=[g.label(v) for v in witness], phase_seconds=phases)


def format_report(report: RunReport, fmt: str) -> str:
    if fmt == "json":
        return report.to_json()
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=BENCH_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerow(report.bench_row())
        return buf.getvalue().rstrip("\n")
    lines = [f"{key}: {value}" for key, value in report.to_dict().items() if key != "witness"]
    if report.witness is not None:
        lines.append("witness: " + " ".join(map(str, report.witness)))
    return "\n".join(lines)


def verify_witness(g: Graph, gamma: Fraction, labels: list[int]) -> tuple[bool, dict]:
    """Check a labelled vertex set against the density threshold."""
    index = {g.label(v): v for v in range(g.n)}
    unknown = [x for x in labels if x not in index]
    if unknown:
        raise InputError(f"unknown vertex label(s): {unknown[:5]}")
    vertices = {index[x] for x in labels}
    s = len(vertices)
    edges = g.count_edges_within(vertices)
    info = {
        "size": s,
        "edges": edges,
        "threshold": str(gamma * pairs(s)),
        "missing_edges": pairs(s) - edges,
        "allowed_missing": get_k(s, gamma),
    }
    ok = 2 * edges * gamma.denominator >= gamma.numerator * s * (s - 1)
    return ok, info


def read_witness(path: str) -> list[int]:
    try:
        tokens = Path(path).read_text().split()
        return [int(t) for t in tokens]
    except (OSError, ValueError) as exc:
        raise InputError(f"cannot read witness file {path}: {exc}") from None


def parse_gamma_list(spec: str) -> list[str]:
    """Comma-separated decimals; an item ``lo:hi:step`` expands to an inclusive range."""
    out = []
    for item in spec.split(","):
        item = item.strip()
        if not item:
            continue
        if ":" in item:
            try:
                lo, hi, step = (Decimal(x) for x in item.split(":"))
            except (InvalidOperation, ValueError):
                raise InputError(f"bad gamma range {item!r}") from None
            if step <= 0:
                raise InputError("gamma range step must be positive")
            x = lo
            while x <= hi:
                out.append(str(x))
                x += step
        else:
            out.append(item)
    for g in out:
        RunConfig("-", gamma=g)
    return out


def _bench_one(args: tuple[str, str, str, float, int]) -> dict:
    path, gamma, algo, time_limit, seed = args
    config = RunConfig(path, gamma=gamma, algorithm=algo, time_limit=time_limit, seed=seed)
    try:
        return run(config).bench_row()
    except Exception as exc:  # recorded, the sweep goes on
        log.warning("%s at gamma=%s failed: %s", path, gamma, exc)
        return {"instance": Path(path).name, "n": "", "m": "", "gamma": gamma, "algo": algo,
                "s_star": "", "time_s": "", "solved": False}


def bench(directory: str, gammas: list[str], algo: str = "pro",
          time_limit: float = DEFAULT_TIME_LIMIT, seed: int = 0, workers: int = 1) -> list[dict]:
    """Run every (graph file, gamma) pair; rows come back in file-name then gamma order."""
    root = Path(directory)
    if not root.is_dir():
        raise InputError(f"{directory} is not a directory")
    files = sorted(p for p in root.iterdir() if p.is_file() and p.suffix in GRAPH_SUFFIXES)
    if not files:
        log.warning("no graph files found in %s", directory)
        return []
    jobs = [(str(p), gamma, algo, time_limit, seed) for p in files for gamma in gammas]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_bench_one, jobs))
    return [_bench_one(job) for job in jobs]


def write_bench_csv(rows: list[dict], stream) -> None:
    writer = csv.DictWriter(stream, fieldnames=BENCH_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)


def summarize(rows: list[dict]) -> dict[str, int]:
    solved: dict[str, int] = {}
    for row in rows:
        solved.setdefault(row["gamma"], 0)
        if row["solved"] is True:
            solved[row["gamma"]] += 1
    return solved


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="maxeqc", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, algo_choices, default_algo):
        p.add_argument("--graph", required=True)
        p.add_argument("--gamma")
        p.add_argument("--algo", choices=algo_choices, default=default_algo)
        p.add_argument("--time-limit", type=float, default=DEFAULT_TIME_LIMIT)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--output", choices=("json", "csv", "text"), default="json")
        p.add_argument("--witness-out")

    solve = sub.add_parser("solve", help="exact maximum quasi-clique (or k-defective clique)")
    common(solve, ALGORITHMS, "pro")
    solve.add_argument("--k", type=int)

    heu = sub.add_parser("heuristic", help="heuristic lower bound only")
    common(heu, ("heu",), "heu")

    oracle = sub.add_parser("oracle", help="exhaustive search, small graphs only")
    common(oracle, ("oracle", "kdc"), "oracle")
    oracle.add_argument("--k", type=int)

    verify = sub.add_parser("verify", help="check a witness file")
    verify.add_argument("--graph", required=True)
    verify.add_argument("--gamma", required=True)
    verify.add_argument("--witness", required=True)

    info = sub.add_parser("info", help="print the load report of a graph file")
    info.add_argument("--graph", required=True)
    info.add_argument("--format", choices=("auto", "edge-list", "matrix-market"), default="auto")

    b = sub.add_parser("bench", help="sweep a directory of graphs over several gamma values")
    b.add_argument("--dir", required=True)
    b.add_argument("--gammas", default="0.90:0.99:0.01")
    b.add_argument("--algo", choices=("pro", "td", "bu", "heu"), default="pro")
    b.add_argument("--time-limit", type=float, default=DEFAULT_TIME_LIMIT)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--out", help="CSV path (default stdout)")
    return parser


def _solve_command(args) -> int:
    if args.command == "oracle" and args.algo == "kdc":
        if args.k is None or args.k < 0:
            raise InputError("oracle --algo kdc needs a non-negative --k")
        g = _load(args.graph)
        try:
            res = brute_max_kdc(g, args.k)
        except OracleLimitError as exc:
            raise InputError(str(exc)) from None
        report = RunReport(Path(args.graph).name, g.n, g.m, None, "oracle-kdc", res.size, 0.0,
                           True, k=args.k, witness=[g.label(v) for v in res.witness])
    else:
        config = RunConfig(args.graph, gamma=args.gamma, algorithm=args.algo,
                           k=getattr(args, "k", None), time_limit=args.time_limit,
                           seed=args.seed, output=args.output, witness_out=args.witness_out)
        report = run(config)
    print(format_report(report, args.output))
    if args.witness_out:
        Path(args.witness_out).write_text("".join(f"{x}\n" for x in report.witness or []))
    if not report.solved and args.algo != "heu":
        return EXIT_TIMEOUT
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        if args.command in ("solve", "heuristic", "oracle"):
            return _solve_command(args)
        if args.command == "verify":
            g = _load(args.graph)
            gamma = RunConfig(args.graph, gamma=args.gamma).gamma_fraction()
            ok, info = verify_witness(g, gamma, read_witness(args.witness))
            for key, value in info.items():
                print(f"{key}: {value}")
            print(f"quasi_clique: {str(ok).lower()}")
            return EXIT_OK if ok else EXIT_REJECTED
        if args.command == "info":
            try:
                _, report = load_graph(args.graph, args.format, with_report=True)
            except (GraphFormatError, ValueError) as exc:
                raise InputError(str(exc)) from None
            print(report.as_text())
            return EXIT_OK
        gammas = parse_gamma_list(args.gammas)
        rows = bench(args.dir, gammas, args.algo, args.time_limit, args.seed, args.workers)
        if args.out:
            with open(args.out, "w", newline="") as fh:
                write_bench_csv(rows, fh)
        else:
            write_bench_csv(rows, sys.stdout)
        for gamma, count in summarize(rows).items():
            log.info("gamma=%s solved=%d", gamma, count)
        return EXIT_OK
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
