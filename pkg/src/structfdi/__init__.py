"""Fault detection and isolation analysis for LTI systems.

Numeric route: fault indices, the fault signature matrix, a full-rank
solvability test, invariant-subspace machinery, observer gain synthesis
and residual simulation for a concrete (A, L, C).  Structural route: the
same questions asked of a whole pattern class at once, with zero-forcing
colorability standing in for the rank test and seeded sampling as the
empirical cross-check.
"""

from .patterns import (PatternFormatError, PatternMatrix, Symbol,
                       format_pattern, is_member, is_zero_pattern,
                       parse_pattern, parse_pattern_blocks, pattern_add,
                       pattern_mul, pattern_power, pattern_transpose,
                       symbol_add, symbol_mul)
from .zero_forcing import (ColoringState, ColorStep, StructGraph, build_graph,
                           color_closure, is_colorable, pattern_full_col_rank,
                           pattern_full_row_rank)
from .subspaces import (DEFAULT_TOL, Subspace, ToleranceConfig,
                        conditioned_invariant, image,
                        invariant_subspace_iterates, kernel, map_subspace,
                        principal_angles, same_subspace, subspace_intersect,
                        subspace_sum)
from .numeric import (FriendGain, FriendSynthesisError, NumericReport,
                      NumericTriple, compute_friend, fault_index,
                      fault_output_subspace, is_solvable, output_separability,
                      signature_matrix)
from .structured import (StructuredReport, StructuredTriple, StructuredVerdict,
                         analyze_structured, format_structured_system,
                         parse_structured_system, signature_pattern,
                         star_column_check, structural_index)
from .sampling import (MonteCarloSummary, SamplerConfig, falsify_pattern_rank,
                       monte_carlo_solvability, sample_member, sample_triple)
from .simulation import (FaultScenario, FaultSignal, IsolationReport,
                         ResidualTrace, decompose_residual, isolate,
                         simulate_error_system, write_trace_csv)

__version__ = "0.1.0"

__all__ = [
    "ColorStep", "ColoringState", "DEFAULT_TOL", "FaultScenario",
    "FaultSignal", "FriendGain", "FriendSynthesisError", "IsolationReport",
    "MonteCarloSummary", "NumericReport", "NumericTriple",
    "PatternFormatError", "PatternMatrix", "ResidualTrace", "SamplerConfig",
    "StructGraph", "StructuredReport", "StructuredTriple", "StructuredVerdict",
    "Subspace", "Symbol", "ToleranceConfig", "analyze_structured",
    "build_graph", "color_closure", "compute_friend", "conditioned_invariant",
    "decompose_residual", "falsify_pattern_rank", "fault_index",
    "fault_output_subspace", "format_pattern", "format_structured_system",
    "image", "invariant_subspace_iterates", "is_colorable", "is_member",
    "is_solvable", "is_zero_pattern", "isolate", "kernel", "map_subspace",
    "monte_carlo_solvability", "output_separability", "parse_pattern",
    "parse_pattern_blocks", "parse_structured_system", "pattern_add",
    "pattern_full_col_rank", "pattern_full_row_rank", "pattern_mul",
    "pattern_power", "pattern_transpose", "principal_angles", "same_subspace",
    "sample_member", "sample_triple", "signature_matrix", "signature_pattern",
    "simulate_error_system", "star_column_check", "structural_index",
    "subspace_intersect", "subspace_sum", "symbol_add", "symbol_mul",
    "write_trace_csv",
]
