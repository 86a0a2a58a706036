"""Exact computation in local rings: standard bases under local degree
orderings via Mora's weak normal form, leading-term ideals, ideals of
initial forms, Hilbert functions and series, and Eliahou-Kervaire Betti
tables of stable monomial ideals."""

from .orderings import (
    EQUAL,
    GREATER,
    LESS,
    ArityMismatchError,
    Monomial,
    OrderingSpec,
    compare_global,
    compare_local,
)
from .poly import (
    InvalidSubstitutionError,
    Polynomial,
    Substitution,
    leading_data,
    mono_deg,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    monomials_of_degree,
    substitute,
    variables,
)
from .division import (
    DivisionResult,
    ResourceLimitError,
    default_tail_degree,
    ecart,
    mora_weak_nf,
    s_polynomial,
    verify_division,
)
from .basis import (
    MonomialIdeal,
    NonHomogeneousError,
    PairRecord,
    RegularSequenceCase,
    StandardBasis,
    divide_form,
    homogeneous_membership,
    ideal_type,
    initial_ideal_equal,
    quadric_linear_factors,
    span_dimension,
    squarefree_quadratic,
    standard_basis,
    verify_buchberger,
)
from .hilbert import (
    CHECK_KEYS,
    HFClassification,
    HilbertFunction,
    HilbertSeries,
    MacaulayExpansion,
    NotStabilizedError,
    SHAPE_FLAT,
    SHAPE_INCREASING,
    SHAPE_OTHER,
    admissible_check,
    binomial_expansion,
    classify_hf,
    hilbert_function,
    hilbert_series,
    krull_dimension,
    macaulay_bound,
)
from .resolutions import BettiTable, StabilityError, betti_matches_hilbert, ek_betti, is_stable
from .families import (
    Analysis,
    CheckResult,
    Expected,
    FamilyInstance,
    FamilyParameterError,
    analyze,
    build_flat,
    build_flat_general,
    build_increasing,
    build_increasing_squarefree,
    corpus,
    random_squarefree_instance,
    random_tail,
    random_type22_ideal,
    random_type2b_ideal,
    shibuta,
    verify_instance,
)
from .parser import ParseError, parse_ideal, parse_polynomial

__version__ = "0.1.0"
