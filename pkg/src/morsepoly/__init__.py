"""Discrete Morse theory on finite posets with exact rational arithmetic.

The package validates and classifies discrete Morse functions on posets
given by Hasse diagrams, repairs them into injective obstruction-free form
without changing the critical set, computes critical-point indices two
independent ways (signed chain sums, and height maxima on an exact
embedding of the order complex), and machine-checks the identities tying
those indices to the Euler characteristic.
"""

from .chain_index import (
    IndexEntry,
    IndexReport,
    MorseCounts,
    chain_sum_excluding,
    chain_sum_lower,
    chain_sum_top,
    chain_sum_top_recursive,
    check_hypotheses,
    combinatorial_index,
    morse_counts,
    predicted_index,
    verify_representation,
)
from .complexes import (
    CellSpec,
    CellularReport,
    ComplexSpec,
    FacePoset,
    MorseInequalityReport,
    dimension_morse,
    face_poset_cellular,
    face_poset_simplicial,
    morse_inequality_report,
)
from .errors import (
    CycleDetected,
    EmptyPoset,
    HypothesisViolated,
    InvalidMorseFunction,
    MalformedSpec,
    Mismatch,
    MissingValue,
    MorsePolyError,
    NonCoverEdge,
    NonGeneralFunction,
    NotACover,
    NotGeneral,
    NotTwoWide,
    ParseError,
    RankConflict,
    UnknownElement,
)
from .generators import gen_complex, gen_morse
from .geometry import (
    CrossCheckReport,
    Embedding,
    GeometricComplex,
    cross_check,
    embed_vertices,
    geometric_index,
    matrix_rank,
    realize_complex,
    spans_full_simplex,
)
from .morse import (
    Classification,
    ExclusivityReport,
    Modification,
    MorseFunction,
    MorseVerdict,
    NormalizationTrace,
    TroubleFlags,
    TroubleReport,
    check_exclusivity,
    classify,
    find_troubled,
    linear_extension,
    monotone_extension_holds,
    normalize,
    normalize_trace,
    validate_morse,
)
from .poset import (
    Chain,
    EulerianVerdict,
    GradingConflict,
    ParityRank,
    Poset,
    RankFunction,
    SimplicialComplex,
    TwoWideVerdict,
    build_poset,
    chain_euler_characteristic,
    compute_parity_rank,
    compute_rank_function,
    enumerate_chains,
    euler_characteristic,
    is_downward_eulerian,
    is_two_wide,
    order_complex,
    transitive_reduction,
)

__version__ = "0.1.0"

__all__ = [
    "Chain",
    "CellSpec",
    "CellularReport",
    "Classification",
    "ComplexSpec",
    "CrossCheckReport",
    "CycleDetected",
    "Embedding",
    "EmptyPoset",
    "EulerianVerdict",
    "ExclusivityReport",
    "FacePoset",
    "GeometricComplex",
    "GradingConflict",
    "HypothesisViolated",
    "IndexEntry",
    "IndexReport",
    "InvalidMorseFunction",
    "MalformedSpec",
    "Mismatch",
    "MissingValue",
    "Modification",
    "MorseCounts",
    "MorseFunction",
    "MorseInequalityReport",
    "MorsePolyError",
    "MorseVerdict",
    "NonCoverEdge",
    "NonGeneralFunction",
    "NormalizationTrace",
    "NotACover",
    "NotGeneral",
    "NotTwoWide",
    "ParityRank",
    "ParseError",
    "Poset",
    "RankConflict",
    "RankFunction",
    "SimplicialComplex",
    "TroubleFlags",
    "TroubleReport",
    "TwoWideVerdict",
    "UnknownElement",
    "build_poset",
    "chain_euler_characteristic",
    "chain_sum_excluding",
    "chain_sum_lower",
    "chain_sum_top",
    "chain_sum_top_recursive",
    "check_exclusivity",
    "check_hypotheses",
    "classify",
    "combinatorial_index",
    "compute_parity_rank",
    "compute_rank_function",
    "cross_check",
    "dimension_morse",
    "embed_vertices",
    "enumerate_chains",
    "euler_characteristic",
    "face_poset_cellular",
    "face_poset_simplicial",
    "find_troubled",
    "gen_complex",
    "gen_morse",
    "geometric_index",
    "is_downward_eulerian",
    "is_two_wide",
    "linear_extension",
    "matrix_rank",
    "monotone_extension_holds",
    "morse_counts",
    "morse_inequality_report",
    "normalize",
    "normalize_trace",
    "order_complex",
    "predicted_index",
    "realize_complex",
    "spans_full_simplex",
    "transitive_reduction",
    "validate_morse",
    "verify_representation",
]
