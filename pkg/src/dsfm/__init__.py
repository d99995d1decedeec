"""Decomposable submodular minimization for a whole family of separable penalties."""

from .oracles import (DirectedCutOracle, HyperedgeCutOracle, ResidualOracle, TableOracle,
                      bruteforce_parametric_min, evaluate, greedy_base_vertex,
                      is_submodular_bruteforce, lovasz_extension, minimize_with_linear)
from .penalties import QuadraticPenalty, conjugate_pair_check, make_quadratic
from .preprocess import NormalizedInstance, normalize_instance
from .cutapprox import CutGraph, combine_graphs, graph_approx_shifted, prefix_cut_values
from .flow import (FlowNetwork, MaxFlowResult, ParametricNetwork, contract, evaluate_at,
                   max_flow, minimal_min_cut)
from .parametric import (ParametricCut, apx_parametric_min_cut, compare_to_exact,
                         exact_parametric_min_cut_discrete)
from .solver import (DualState, SolveResult, cut_to_dual, dual_to_primal, error_budget,
                     find_min_cuts, progress_step, solve, threshold_set)

__all__ = [
    "DirectedCutOracle", "HyperedgeCutOracle", "ResidualOracle", "TableOracle",
    "bruteforce_parametric_min", "evaluate", "greedy_base_vertex", "is_submodular_bruteforce",
    "lovasz_extension", "minimize_with_linear", "QuadraticPenalty", "conjugate_pair_check",
    "make_quadratic", "NormalizedInstance", "normalize_instance", "CutGraph", "combine_graphs",
    "graph_approx_shifted", "prefix_cut_values", "FlowNetwork", "MaxFlowResult",
    "ParametricNetwork", "contract", "evaluate_at", "max_flow", "minimal_min_cut",
    "ParametricCut", "apx_parametric_min_cut", "compare_to_exact",
    "exact_parametric_min_cut_discrete", "DualState", "SolveResult", "cut_to_dual",
    "dual_to_primal", "error_budget", "find_min_cuts", "progress_step", "solve",
    "threshold_set",
]
