"""Cascade simulation with symmetric activation probabilities.

Estimate and exactly compute node-to-node activation probabilities for
a persistent-activation cascade on undirected graphs, and verify that
the resulting probability matrix is symmetric, by three independent
routes: Monte Carlo simulation, random boolean matrix products, and
exact subset dynamic programming.
"""

from .bitset import mask_from_nodes, nodes_from_mask
from .cascade import (
    activation_probability,
    estimate_activation_row,
    estimate_activation_rows,
    run_cascade,
    step,
)
from .exact import (
    DEFAULT_EXACT_CAP,
    ActivationDistribution,
    ExactCapError,
    ProbabilityMatrix,
    TransitionModel,
    evolve_distribution,
    exact_activation_matrix,
    point_distribution,
    transition_distribution,
)
from .graph import (
    EdgeListError,
    Graph,
    ValidationReport,
    Violation,
    generate_er_graph,
    parse_edge_list,
    validate,
)
from .matrix import (
    StepMatrix,
    apply_matrix,
    chain_entry,
    estimate_by_products,
    identity_matrix,
    product_matrix,
    sample_step_matrix,
)
from .stats import EstimateCell, normal_quantile, wilson_interval
from .verify import (
    ConsistencyReport,
    PairRecord,
    SymmetryReport,
    check_exact_symmetry,
    check_mc_consistency,
    check_reversal_agreement,
    check_transpose_identity,
)

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "EdgeListError",
    "parse_edge_list",
    "generate_er_graph",
    "validate",
    "ValidationReport",
    "Violation",
    "mask_from_nodes",
    "nodes_from_mask",
    "activation_probability",
    "step",
    "run_cascade",
    "estimate_activation_row",
    "estimate_activation_rows",
    "StepMatrix",
    "identity_matrix",
    "sample_step_matrix",
    "apply_matrix",
    "chain_entry",
    "product_matrix",
    "estimate_by_products",
    "DEFAULT_EXACT_CAP",
    "ExactCapError",
    "ActivationDistribution",
    "ProbabilityMatrix",
    "TransitionModel",
    "point_distribution",
    "transition_distribution",
    "evolve_distribution",
    "exact_activation_matrix",
    "EstimateCell",
    "wilson_interval",
    "normal_quantile",
    "SymmetryReport",
    "PairRecord",
    "ConsistencyReport",
    "check_exact_symmetry",
    "check_transpose_identity",
    "check_reversal_agreement",
    "check_mc_consistency",
    "__version__",
]
