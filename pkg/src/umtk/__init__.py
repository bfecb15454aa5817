"""Structural equivalences of finite semimetric and ultrametric spaces.

Exact-arithmetic tooling for deciding isometry, weak similarity, and
ball-preserving bijections between finite spaces, built around diametrical
graphs, representing trees, canonical tree codes, and ballean Hasse diagrams.
"""
from .balls import (
    Ball,
    Ballean,
    HasseDiagram,
    ball_preserving_bijection,
    ballean_to_json,
    enumerate_balls,
    hasse_diagram,
    hasse_digraph_iso,
    hasse_iso_to_json,
    hasse_to_dot,
    hasse_to_json,
    reversed_is_rooted_tree,
    verify_ball_preserving,
)
from .classify import (
    INAPPLICABLE,
    NOT_ISOMORPHIC_SHAPES,
    ClassReport,
    adversarial_relabeling,
    classify_space,
    witness_from_unlabeled_iso,
)
from .diametrical import (
    DiametricalGraph,
    MultipartitePartition,
    diametrical_graph,
    graph_to_dot,
    multipartite_parts,
    partition_to_json,
    rebuild_edges,
)
from .errors import (
    FormatError,
    InapplicableError,
    InfeasibleConstraintsError,
    InvalidTreeError,
    NotABijectionError,
    NotIsomorphicError,
    NotMultipartiteError,
    NotUltrametricError,
    SpaceValidationError,
    SpectrumSizeMismatchError,
    TooLargeError,
    UmtkError,
    UnknownPointError,
    VerificationFailedError,
)
from .generators import (
    GenConfig,
    oracle_ball_preserving,
    oracle_isometry,
    oracle_weak_similarity,
    random_relabeled,
    random_semimetric,
    random_ultrametric,
    renamed_copy,
)
from .reptree import (
    RepNode,
    RepTree,
    build_tree,
    space_from_tree,
    strip_labels,
    tree_distance,
    tree_from_json,
    tree_to_dot,
    tree_to_json,
    validate_tree,
)
from .similarity import (
    IsometryWitness,
    WeakSimWitness,
    decide_isometry,
    decide_weak_similarity,
    forced_scaling,
    verify_isometry,
    verify_weak_similarity,
    weak_sim_ultrametric_fast,
    weak_sim_witness_from_json,
    weak_sim_witness_to_json,
    witness_to_text,
)
from .spaces import (
    FiniteSemimetricSpace,
    diameter,
    is_ultrametric,
    parse_rational,
    format_rational,
    rank_relabel,
    space_from_json,
    space_from_pairs,
    space_to_json,
    space_to_text,
    spectrum,
    ultrametric_violation,
    validate_semimetric,
)
from .suites import SuiteResult, run_all
from .treecanon import (
    canon_code_labeled,
    canon_code_unlabeled,
    check_iso_map,
    rooted_tree_iso_map,
)

__version__ = "0.1.0"

__all__ = [
    "Ball",
    "Ballean",
    "ClassReport",
    "DiametricalGraph",
    "FiniteSemimetricSpace",
    "GenConfig",
    "HasseDiagram",
    "INAPPLICABLE",
    "IsometryWitness",
    "MultipartitePartition",
    "NOT_ISOMORPHIC_SHAPES",
    "RepNode",
    "RepTree",
    "SuiteResult",
    "WeakSimWitness",
    # errors
    "FormatError",
    "InapplicableError",
    "InfeasibleConstraintsError",
    "InvalidTreeError",
    "NotABijectionError",
    "NotIsomorphicError",
    "NotMultipartiteError",
    "NotUltrametricError",
    "SpaceValidationError",
    "SpectrumSizeMismatchError",
    "TooLargeError",
    "UmtkError",
    "UnknownPointError",
    "VerificationFailedError",
    # operations
    "adversarial_relabeling",
    "ball_preserving_bijection",
    "ballean_to_json",
    "hasse_iso_to_json",
    "hasse_to_dot",
    "hasse_to_json",
    "build_tree",
    "canon_code_labeled",
    "canon_code_unlabeled",
    "check_iso_map",
    "classify_space",
    "decide_isometry",
    "decide_weak_similarity",
    "diameter",
    "diametrical_graph",
    "enumerate_balls",
    "forced_scaling",
    "format_rational",
    "graph_to_dot",
    "hasse_diagram",
    "hasse_digraph_iso",
    "is_ultrametric",
    "multipartite_parts",
    "partition_to_json",
    "oracle_ball_preserving",
    "oracle_isometry",
    "oracle_weak_similarity",
    "parse_rational",
    "random_relabeled",
    "random_semimetric",
    "random_ultrametric",
    "rank_relabel",
    "rebuild_edges",
    "renamed_copy",
    "reversed_is_rooted_tree",
    "rooted_tree_iso_map",
    "run_all",
    "space_from_json",
    "space_from_pairs",
    "space_from_tree",
    "space_to_json",
    "space_to_text",
    "spectrum",
    "strip_labels",
    "tree_distance",
    "tree_from_json",
    "tree_to_dot",
    "tree_to_json",
    "ultrametric_violation",
    "validate_semimetric",
    "validate_tree",
    "verify_ball_preserving",
    "verify_isometry",
    "verify_weak_similarity",
    "weak_sim_ultrametric_fast",
    "weak_sim_witness_from_json",
    "weak_sim_witness_to_json",
    "witness_to_text",
    "witness_from_unlabeled_iso",
]
