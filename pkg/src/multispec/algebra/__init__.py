"""Exact arithmetic: finite fields, Q, GF(q)(t), and univariate polynomials."""

from .fields import (
    Embedding,
    ExtensionField,
    Field,
    FieldElement,
    FunctionField,
    PrimeField,
    RationalField,
    embedding,
    extension,
    field_arith,
    field_make,
    function_field,
    rationals,
)
from .numtheory import divisors, factorint, is_prime, mobius_mu, period_count
from .poly import (
    ZERO_DEGREE,
    Poly,
    poly_exact_div,
    poly_gcd,
    poly_resultant,
    poly_roots_enum,
    split_completely,
)

__all__ = [
    "Embedding",
    "ExtensionField",
    "Field",
    "FieldElement",
    "FunctionField",
    "PrimeField",
    "Poly",
    "RationalField",
    "ZERO_DEGREE",
    "divisors",
    "embedding",
    "extension",
    "factorint",
    "field_arith",
    "field_make",
    "function_field",
    "is_prime",
    "mobius_mu",
    "period_count",
    "poly_exact_div",
    "poly_gcd",
    "poly_resultant",
    "poly_roots_enum",
    "rationals",
    "split_completely",
]
