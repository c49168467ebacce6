"""qf2: exact quadratic-form algebra over fields of characteristic 2."""

from .fields import (
    El,
    Field,
    base_field,
    rational_field,
    artin_schreier_membership,
    frobenius_coordinates,
    is_square,
    valuation_split,
)

__all__ = [
    "El",
    "Field",
    "base_field",
    "rational_field",
    "artin_schreier_membership",
    "frobenius_coordinates",
    "is_square",
    "valuation_split",
]
