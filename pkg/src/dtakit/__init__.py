"""Toolkit for mixed-level detecting arrays in interaction testing.

Generate (annealing search), verify (structural and brute-force checks),
compose (orthogonal-array and covering-array constructions), and apply
(fault localization) detecting arrays over factors with unequal level
counts.
"""

from .core import (
    DomainError,
    Interaction,
    MixedArray,
    RowSet,
    TypeVector,
    all_interactions,
    extensions,
    rho,
    rho_union,
)
from .verify import (
    EnumerationCapError,
    InfeasibleParametersError,
    VerifyReport,
    check_search_constraints,
    coverage_index,
    is_d_extendible,
    is_detecting,
    is_detecting_brute,
    is_super_simple,
    lower_bound,
    min_rho_check,
)
from .construct import (
    OaSpec,
    derive_super_simple,
    full_factorial,
    insert_expand,
    kronecker,
    mca_optimum,
    oa_bush,
    oa_sum,
    replicate_cyclic,
    stack,
)
from .search import ChainTrace, SearchConfig, SearchReport, sa_objective, sa_search
from .locate import (
    Identified,
    Inconsistent,
    LocateResult,
    OutcomeVector,
    TooManyFaults,
    locate_faults,
    simulate_outcome,
)
from .textfmt import ArrayDocument, FormatError, export_suite, parse, serialize
from . import catalog

__version__ = "0.1.0"

__all__ = [
    "ArrayDocument",
    "ChainTrace",
    "DomainError",
    "EnumerationCapError",
    "FormatError",
    "Identified",
    "Inconsistent",
    "InfeasibleParametersError",
    "Interaction",
    "LocateResult",
    "MixedArray",
    "OaSpec",
    "OutcomeVector",
    "RowSet",
    "SearchConfig",
    "SearchReport",
    "TooManyFaults",
    "TypeVector",
    "VerifyReport",
    "all_interactions",
    "catalog",
    "check_search_constraints",
    "coverage_index",
    "derive_super_simple",
    "export_suite",
    "extensions",
    "full_factorial",
    "insert_expand",
    "is_d_extendible",
    "is_detecting",
    "is_detecting_brute",
    "is_super_simple",
    "kronecker",
    "locate_faults",
    "lower_bound",
    "mca_optimum",
    "min_rho_check",
    "oa_bush",
    "oa_sum",
    "parse",
    "replicate_cyclic",
    "rho",
    "rho_union",
    "sa_objective",
    "sa_search",
    "serialize",
    "simulate_outcome",
    "stack",
]
