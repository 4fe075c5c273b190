"""Layered wheels: generators, condition validators, and width oracles.

A layered wheel is a graph drawn on a rooted tree whose layers induce paths
and whose remaining edges climb from descendants to ancestors.  The package
builds finite prefixes of the standard and triangle-free constructions,
checks the defining conditions, and carries the supporting machinery: chordal
trigraph representations, branch search, balanced-separator decompositions,
contraction sequences, and exact reference oracles.
"""

from .core import (
    BLACK,
    NONE,
    RED,
    Bramble,
    BudgetExceededError,
    CapExceededError,
    DeadlineExceededError,
    Graph,
    LayerwheelError,
    PreconditionError,
    PrefixExhaustedError,
    TreeDecomposition,
    Trigraph,
    UnknownVertexError,
    connected_components,
    induced_subgraph,
    label_key,
)
from .wheels import (
    LayeredGraph,
    WheelPrefix,
    boundary_siblings,
    build_trianglefree_wheel,
    build_wheel,
    children_count,
    max_children_bound,
    prefix_from_obj,
    prefix_to_obj,
    upward_neighborhood,
)
from .axioms import AxiomReport, ConditionVerdict, validate_axioms
from .chordal import (
    RootedTree,
    chordal_complete,
    is_chordal,
    tree_representation,
    validate_representation,
)
from .branchsearch import (
    EMBEDDING,
    PATH,
    PREFIX_EXHAUSTED,
    BranchSearchResult,
    bounded_branch_search,
    hfree_check,
    min_branch_hits,
)
from .decomposer import (
    BoundsReport,
    DecompositionTrace,
    SeparatorCertificate,
    balance_fraction,
    build_separator,
    constructive_width_bound,
    decompose,
    doubled_petersen,
    find_balanced_split,
    find_balanced_vertex,
    high_girth_host,
    select_hfree_layers,
    theoretical_bounds,
)
from .twinwidth import (
    ContractionStep,
    SequenceStats,
    brute_twinwidth,
    oriented_out_arcs,
    red_quotient,
    sequence_width,
    wheel_contraction_sequence,
)
from .oracles import (
    TDCheck,
    bramble_order,
    clique_number,
    exact_treewidth,
    girth,
    layer_bramble,
    verify_bramble,
    verify_tree_decomposition,
)

__version__ = "0.1.0"

__all__ = [
    "AxiomReport",
    "BLACK",
    "BoundsReport",
    "Bramble",
    "BranchSearchResult",
    "BudgetExceededError",
    "CapExceededError",
    "ConditionVerdict",
    "ContractionStep",
    "DeadlineExceededError",
    "DecompositionTrace",
    "EMBEDDING",
    "Graph",
    "LayeredGraph",
    "LayerwheelError",
    "NONE",
    "PATH",
    "PREFIX_EXHAUSTED",
    "PreconditionError",
    "PrefixExhaustedError",
    "RED",
    "RootedTree",
    "SeparatorCertificate",
    "SequenceStats",
    "TDCheck",
    "TreeDecomposition",
    "Trigraph",
    "UnknownVertexError",
    "WheelPrefix",
    "balance_fraction",
    "boundary_siblings",
    "bounded_branch_search",
    "bramble_order",
    "brute_twinwidth",
    "build_separator",
    "build_trianglefree_wheel",
    "build_wheel",
    "children_count",
    "chordal_complete",
    "clique_number",
    "connected_components",
    "constructive_width_bound",
    "decompose",
    "doubled_petersen",
    "exact_treewidth",
    "find_balanced_split",
    "find_balanced_vertex",
    "girth",
    "hfree_check",
    "high_girth_host",
    "induced_subgraph",
    "is_chordal",
    "label_key",
    "layer_bramble",
    "max_children_bound",
    "min_branch_hits",
    "oriented_out_arcs",
    "prefix_from_obj",
    "prefix_to_obj",
    "red_quotient",
    "select_hfree_layers",
    "sequence_width",
    "theoretical_bounds",
    "tree_representation",
    "upward_neighborhood",
    "validate_axioms",
    "validate_representation",
    "verify_bramble",
    "verify_tree_decomposition",
    "wheel_contraction_sequence",
]
