"""Exact rational-function algebra over finite fields.

The package computes power sums sum_x f(x)^s of rational functions over
F_q in closed form, runs permutation tests on the projective line, and
classifies low-degree permutation rational functions up to the natural
fractional-linear equivalence.
"""

from .carlitz import (
    FormulaOutOfRange,
    PartialFractionDecomposition,
    carlitz_identity_check,
    partial_fractions,
    power_sum_brute,
    power_sum_closed,
)
from .classify import (
    ClassificationReport,
    check_against_golden,
    classify,
    classify_and_check,
    dedupe,
    load_golden,
    normal_form_audit,
)
from .gf import (
    ENVELOPE,
    FieldElement,
    FiniteField,
    arith,
    embed,
    field_from_order,
    format_element,
    frobenius,
    is_square,
    make_field,
    parse_element,
    prime_power,
    project,
    trace,
)
from .perm import (
    DEFAULT_BUDGET,
    PRFamilySpec,
    TheoremReport,
    build_family,
    hermite_test,
    is_pr_brute,
    verify_theorem,
)
from .poly import (
    Polynomial,
    format_poly,
    is_irreducible,
    parse_poly,
    poly_arith,
    roots_over,
    splitting_degree,
    splitting_field,
)
from .ratfun import (
    INFINITY,
    MobiusTransform,
    RationalFunction,
    are_equivalent,
    canonical_key,
    compose,
    enumerate_pgl,
    evaluate,
    format_ratfun,
    is_bijection,
    is_polynomial_equivalent,
    normalize,
    parse_ratfun,
    value_table,
)
from .symident import (
    MultiPoly,
    instantiate,
    load_identity,
    mpoly_arith,
    parse_mpoly,
    resultant_case_split,
    resultant_wrt,
    sylvester_matrix,
)

__all__ = [
    "ENVELOPE",
    "ClassificationReport",
    "DEFAULT_BUDGET",
    "FieldElement",
    "FiniteField",
    "FormulaOutOfRange",
    "INFINITY",
    "MobiusTransform",
    "MultiPoly",
    "PRFamilySpec",
    "PartialFractionDecomposition",
    "Polynomial",
    "RationalFunction",
    "TheoremReport",
    "are_equivalent",
    "arith",
    "build_family",
    "canonical_key",
    "carlitz_identity_check",
    "check_against_golden",
    "classify",
    "classify_and_check",
    "compose",
    "dedupe",
    "embed",
    "enumerate_pgl",
    "evaluate",
    "field_from_order",
    "format_element",
    "format_poly",
    "format_ratfun",
    "frobenius",
    "hermite_test",
    "instantiate",
    "is_bijection",
    "is_irreducible",
    "is_polynomial_equivalent",
    "is_pr_brute",
    "is_square",
    "load_golden",
    "load_identity",
    "make_field",
    "mpoly_arith",
    "normal_form_audit",
    "normalize",
    "parse_element",
    "parse_mpoly",
    "parse_poly",
    "parse_ratfun",
    "partial_fractions",
    "poly_arith",
    "power_sum_brute",
    "power_sum_closed",
    "prime_power",
    "project",
    "resultant_case_split",
    "resultant_wrt",
    "roots_over",
    "splitting_degree",
    "splitting_field",
    "sylvester_matrix",
    "trace",
    "value_table",
    "verify_theorem",
]

__version__ = "0.1.0"
