"""Graph squares, square roots, planar set splitting, and the gadget pipeline."""

from .errors import Error
from .graphs import (
    Graph,
    canonical_pair,
    complete_graph,
    connected_components,
    cycle_graph,
    is_subgraph,
    neighborhood_clique_check,
    path_graph,
    square,
    star_graph,
    verify_square_root,
)
from .planarity import ApexCertificate, find_apex_set, is_apex_with, is_planar
from .reductions import (
    APEX_LABELS,
    ColoringReduction,
    LabeledGadgetGraph,
    Role,
    TailMatch,
    color_to_setsplit,
    coloring_to_partition,
    detect_tails,
    edge_families,
    extend_coloring,
    partition_to_coloring,
    partition_to_root,
    restrict_coloring,
    root_to_partition,
    setsplit_to_graph,
    solve_coloring_bruteforce,
)
from .setsplit import (
    Partition3,
    SetSplitInstance,
    Violation,
    incidence_graph,
    solve_setsplit_bruteforce,
    validate_instance,
    verify_partition,
)
from .solver import (
    Contradiction,
    PartialRoot,
    SolveConfig,
    SolveOutcome,
    certify_no_root,
    forced_edges_from_tails,
    initial_propagation,
    solve_square_root,
)

__version__ = "0.1.0"

__all__ = [
    "APEX_LABELS",
    "ApexCertificate",
    "ColoringReduction",
    "Contradiction",
    "Error",
    "Graph",
    "LabeledGadgetGraph",
    "PartialRoot",
    "Partition3",
    "Role",
    "SetSplitInstance",
    "SolveConfig",
    "SolveOutcome",
    "TailMatch",
    "Violation",
    "canonical_pair",
    "certify_no_root",
    "color_to_setsplit",
    "coloring_to_partition",
    "complete_graph",
    "connected_components",
    "cycle_graph",
    "detect_tails",
    "edge_families",
    "extend_coloring",
    "find_apex_set",
    "forced_edges_from_tails",
    "incidence_graph",
    "initial_propagation",
    "is_apex_with",
    "is_planar",
    "is_subgraph",
    "neighborhood_clique_check",
    "partition_to_coloring",
    "partition_to_root",
    "path_graph",
    "restrict_coloring",
    "root_to_partition",
    "setsplit_to_graph",
    "solve_coloring_bruteforce",
    "solve_setsplit_bruteforce",
    "solve_square_root",
    "square",
    "star_graph",
    "validate_instance",
    "verify_partition",
    "verify_square_root",
]
