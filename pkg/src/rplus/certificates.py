"""Membership certificates: explicit nonnegative integer combinations
sum a_k binom(alpha, k) equal to a target element."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .errors import InternalInconsistency, PreconditionError
from .numfield import FieldElem, NumberField
from .rplus_poly import RPlusPoly, binom_of_poly


def binomial_values(alpha: FieldElem, K: int) -> list[FieldElem]:
    """[binom(alpha, 0), ..., binom(alpha, K)]."""
    out = [alpha.field.one()]
    for k in range(1, K + 1):
        out.append(out[-1] * (alpha - (k - 1)) / k)
    return out


def evaluate(alpha: FieldElem, terms: Sequence[tuple[int, int]]) -> FieldElem:
    if not terms:
        return alpha.field.zero()
    vals = binomial_values(alpha, max(k for k, _ in terms))
    acc = alpha.field.zero()
    for k, a in terms:
        acc = acc + vals[k] * a
    return acc


@dataclass(frozen=True)
class Certificate:
    target: FieldElem
    terms: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        for k, a in self.terms:
            if k < 0 or a < 0:
                raise PreconditionError(f"certificate term ({k}, {a}) is negative")

    @property
    def poly(self) -> RPlusPoly:
        return RPlusPoly.from_terms(self.terms)

    @property
    def size(self) -> int:
        """Number of bits in the coefficients plus the largest index."""
        top = max((k for k, _ in self.terms), default=0)
        return top + sum(a.bit_length() for _, a in self.terms)

    def to_json(self) -> dict:
        return {"target": self.target.to_json(), "terms": [[k, str(a)] for k, a in self.terms]}

    @classmethod
    def from_json(cls, field: NumberField, data: dict) -> Certificate:
        target = field.elem([Fraction(c) for c in data["target"]])
        terms = tuple((int(k), int(a)) for k, a in data["terms"])
        return cls(target, terms)


def certificate_from_poly(alpha: FieldElem, f: RPlusPoly) -> Certificate:
    terms = tuple(f.terms())
    return Certificate(evaluate(alpha, terms), terms)


def verify_certificate(field: NumberField, cert: Certificate, alpha: FieldElem | None = None) -> bool:
    alpha = field.alpha() if alpha is None else alpha
    if cert.target.field != field:
        return False
    if any(k < 0 or a < 0 for k, a in cert.terms):
        return False
    return evaluate(alpha, cert.terms) == cert.target


class CertAlgebra:
    """Closure operations on certificates for a fixed alpha.

    Sums and products of certificates are certificates; integers and
    negation are available once a certificate for -1 is supplied.
    """

    def __init__(self, alpha: FieldElem, neg_one: Certificate | None = None):
        self.alpha = alpha
        self.neg_one = neg_one

    def make(self, f: RPlusPoly) -> Certificate:
        return certificate_from_poly(self.alpha, f)

    def basis(self, k: int, a: int = 1) -> Certificate:
        return self.make(RPlusPoly.from_terms([(k, a)]))

    def add(self, *certs: Certificate) -> Certificate:
        f = RPlusPoly()
        for c in certs:
            f = f + c.poly
        return self.make(f)

    def mul(self, a: Certificate, b: Certificate) -> Certificate:
        return self.make(a.poly * b.poly)

    def scale(self, a: Certificate, c: int) -> Certificate:
        if c < 0:
            return self.scale(self.mul(self._neg(), a), -c)
        return self.make(a.poly.scale(c))

    def binom(self, a: Certificate, k: int) -> Certificate:
        """Certificate for binom(target, k)."""
        return self.make(binom_of_poly(a.poly, k))

    def integer(self, n: int) -> Certificate:
        if n >= 0:
            return self.basis(0, n)
        return self.scale(self._neg(), -n)

    def add_int(self, a: Certificate, n: int) -> Certificate:
        return self.add(a, self.integer(n))

    def _neg(self) -> Certificate:
        if self.neg_one is None:
            raise PreconditionError("a certificate for -1 is needed for negative multiples")
        return self.neg_one

    def checked(self, cert: Certificate, expected: Any) -> Certificate:
        if cert.target != expected:
            raise InternalInconsistency(f"certificate evaluates to {cert.target}, expected {expected}")
        return cert
