"""Decide and certify quadratic inequalities between minors of totally nonnegative matrices."""

from .core import (
    Context,
    Couple,
    Family,
    GroundElement,
    Matching,
    ProperPair,
    Status,
    Verdict,
    canonicalize,
    check_universal,
    col,
    exchange,
    feasible_matchings,
    is_feasible,
    is_proper,
    iter_contexts,
    make_context,
    matching_multiset,
    proper_pairs,
    row,
)
from .double_flow import DoubleFlow, decompose, iter_double_flows, matching_of, switch
from .errors import TnnCertifyError, ValidationError, OverlapError, BalanceError, EmptyYError, RangeError, NotProperError, NotSubsetError, SizeMismatchError, DimensionError, NegativeWeightError, InvalidNetworkError, StructureError, InfeasibleMatchingError, ConstructionFailure, IsUniversalError
from .flows import (
    Flow,
    count_flows,
    enumerate_flows,
    evaluate_inequality,
    fg_function,
    grid_network,
    lindstrom_matrix,
    random_tnn,
    staircase_network,
)
from .matrix import determinant, is_tnn, minor
from .network import PlanarNetwork, hat_transform, load_network, dump_network, validate_network
from .problem import Problem, load_problem, parse_problem
from .witness import WitnessCertificate, build_counterexample, build_witness_network, verify_p1p2

__version__ = "0.1.0"

__all__ = [
    "Context",
    "Couple",
    "Family",
    "GroundElement",
    "Matching",
    "ProperPair",
    "Status",
    "Verdict",
    "canonicalize",
    "check_universal",
    "col",
    "exchange",
    "feasible_matchings",
    "is_feasible",
    "is_proper",
    "iter_contexts",
    "make_context",
    "matching_multiset",
    "proper_pairs",
    "row",
    "Flow",
    "count_flows",
    "enumerate_flows",
    "evaluate_inequality",
    "fg_function",
    "grid_network",
    "lindstrom_matrix",
    "random_tnn",
    "staircase_network",
    "DoubleFlow",
    "decompose",
    "iter_double_flows",
    "matching_of",
    "switch",
    "TnnCertifyError",
    "ValidationError",
    "OverlapError",
    "BalanceError",
    "EmptyYError",
    "RangeError",
    "NotProperError",
    "NotSubsetError",
    "SizeMismatchError",
    "DimensionError",
    "NegativeWeightError",
    "InvalidNetworkError",
    "StructureError",
    "InfeasibleMatchingError",
    "ConstructionFailure",
    "IsUniversalError",
    "determinant",
    "is_tnn",
    "minor",
    "PlanarNetwork",
    "hat_transform",
    "load_network",
    "dump_network",
    "validate_network",
    "Problem",
    "load_problem",
    "parse_problem",
    "WitnessCertificate",
    "build_counterexample",
    "build_witness_network",
    "verify_p1p2",
]
