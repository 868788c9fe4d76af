"""Exact computations in the semiring R+(alpha) of nonnegative integer
combinations of binomial coefficients binom(alpha, k)."""

from .errors import (
    InternalInconsistency,
    PrecisionCapExceeded,
    PreconditionError,
    RPlusError,
    SearchBudgetExhausted,
)
from .poly import BinomPoly, RatPoly, parse_poly
from .numfield import FieldElem, NumberField, field_from_min_poly

__all__ = [
    "BinomPoly",
    "FieldElem",
    "InternalInconsistency",
    "NumberField",
    "PrecisionCapExceeded",
    "PreconditionError",
    "RPlusError",
    "RatPoly",
    "SearchBudgetExhausted",
    "field_from_min_poly",
    "parse_poly",
]
