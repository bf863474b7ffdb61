"""Exact and heuristic solvers for the maximum edge-based quasi-clique problem."""

from .frameworks import (FrameworkResult, IterationTrace, Memo, check, eqc_bu, eqc_pro, eqc_td,
                         upper_bound)
from .graph import (DegeneracyOrdering, Graph, VertexSelection, closed_neighborhood,
                    degeneracy_ordering, get_k, induced_subgraph, is_eqc, load_graph, parse_gamma)
from .heuristics import degen, degen_opt, eqc_heu, eqc_heu_pro
from .kdc import KdcResult, SearchBudget, compute_ub, greedy_color, reduce_candidates, solve_defect
from .oracle import brute_max_eqc, brute_max_kdc

__all__ = [
    "DegeneracyOrdering", "FrameworkResult", "Graph", "IterationTrace", "KdcResult", "Memo",
    "SearchBudget", "VertexSelection", "brute_max_eqc", "brute_max_kdc", "check",
    "closed_neighborhood", "compute_ub", "degen", "degen_opt", "degeneracy_ordering",
    "eqc_bu", "eqc_heu", "eqc_heu_pro", "eqc_pro", "eqc_td", "get_k", "greedy_color",
    "induced_subgraph", "is_eqc", "load_graph", "parse_gamma", "reduce_candidates",
    "solve_defect", "upper_bound",
]
