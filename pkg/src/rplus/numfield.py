"""Arithmetic in Q(alpha) = Q[x]/m_alpha.

Elements are stored in the power basis of the integral part theta = delta*alpha,
where delta is the least positive integer making theta an algebraic integer.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import factorial, lcm
from typing import Any, Iterable, Sequence

import sympy

from .errors import PreconditionError
from .linalg import det, solve
from .poly import RatPoly, as_rat, vp_int


def sylvester_resultant(f: RatPoly, g: RatPoly) -> Fraction:
    if f.is_zero() or g.is_zero():
        return Fraction(0)
    m, k = len(f.coeffs) - 1, len(g.coeffs) - 1
    if m == 0:
        return f.lead**k
    if k == 0:
        return g.lead**m
    size = m + k
    rows = []
    fr = list(reversed(f.coeffs))
    gr = list(reversed(g.coeffs))
    for i in range(k):
        rows.append([0] * i + fr + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gr + [0] * (size - k - 1 - i))
    return det(rows)


def discriminant(f: RatPoly) -> Fraction:
    n = len(f.coeffs) - 1
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * sylvester_resultant(f, f.derivative()) / f.lead


def is_irreducible(m: RatPoly) -> bool:
    """Rational root test, which settles degree <= 3, then exact factorization."""
    n = len(m.coeffs) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    ints = m.primitive().int_coeffs()
    if ints[0] == 0:
        return False
    a0, an = abs(ints[0]), abs(ints[-1])
    for p in sympy.divisors(a0):
        for q in sympy.divisors(an):
            for r in (Fraction(p, q), Fraction(-p, q)):
                if m(r) == 0:
                    return False
    if n <= 3:
        return True
    x = sympy.Symbol("x")
    return sympy.Poly(list(reversed(ints)), x, domain="ZZ").is_irreducible


@dataclass(frozen=True)
class NumberField:
    min_poly: tuple[int, ...]
    degree: int
    delta: int
    theta_min_poly: tuple[int, ...]
    disc: int
    _theta_poly: RatPoly = dc_field(compare=False, repr=False, hash=False)

    def elem(self, coords: Iterable[Any]) -> FieldElem:
        return FieldElem(self, coords)

    def from_rational(self, r: Any) -> FieldElem:
        return FieldElem(self, [as_rat(r)] + [0] * (self.degree - 1))

    def zero(self) -> FieldElem:
        return self.from_rational(0)

    def one(self) -> FieldElem:
        return self.from_rational(1)

    def theta(self) -> FieldElem:
        if self.degree == 1:
            return self.from_rational(-self.theta_min_poly[0])
        return FieldElem(self, [0, 1] + [0] * (self.degree - 2))

    def alpha(self) -> FieldElem:
        return self.theta() / self.delta

    def from_poly(self, poly: RatPoly, at: FieldElem) -> FieldElem:
        return poly(at) + self.zero()

    def from_alpha_coords(self, coeffs: Sequence[Any]) -> FieldElem:
        """Element sum_i coeffs[i] * alpha^i."""
        return self.from_poly(RatPoly(coeffs), self.alpha())

    def to_json(self) -> dict:
        return {
            "min_poly": [str(c) for c in self.min_poly],
            "delta": self.delta,
            "theta_min_poly": [str(c) for c in self.theta_min_poly],
            "disc": str(self.disc),
        }


def _scaled_min_poly(m: Sequence[int], c: int) -> list[Fraction]:
    """Monic minimal polynomial of c*alpha."""
    n = len(m) - 1
    return [Fraction(m[i] * c ** (n - i), m[n]) for i in range(n + 1)]


def field_from_min_poly(m: RatPoly | Sequence[Any], trusted: bool = False) -> NumberField:
    poly = m if isinstance(m, RatPoly) else RatPoly(m)
    if poly.is_zero() or len(poly.coeffs) < 2:
        raise PreconditionError("minimal polynomial must be nonconstant")
    poly = poly.primitive()
    if not trusted and not is_irreducible(poly):
        raise PreconditionError(f"{poly} is reducible over Q")
    ints = poly.int_coeffs()
    n = len(ints) - 1
    delta = 1
    for p in sorted(sympy.factorint(abs(ints[-1]))):
        e = 0
        while any(vp_int(p, c.numerator) < vp_int(p, c.denominator) for c in _scaled_min_poly(ints, p**e)):
            e += 1
        delta *= p**e
    theta = _scaled_min_poly(ints, delta)
    if any(c.denominator != 1 for c in theta):
        raise PreconditionError("integral part computation failed")
    theta_ints = tuple(int(c) for c in theta)
    theta_poly = RatPoly(theta_ints)
    disc = discriminant(theta_poly)
    return NumberField(
        min_poly=tuple(ints),
        degree=n,
        delta=delta,
        theta_min_poly=theta_ints,
        disc=int(disc),
        _theta_poly=theta_poly,
    )


class FieldElem:
    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords: Iterable[Any]):
        cs = tuple(as_rat(c) for c in coords)
        if len(cs) != field.degree:
            raise PreconditionError(f"expected {field.degree} coordinates, got {len(cs)}")
        self.field = field
        self.coords = cs

    @classmethod
    def _from_poly(cls, field: NumberField, poly: RatPoly) -> FieldElem:
        r = poly % field._theta_poly if len(poly.coeffs) > field.degree else poly
        cs = list(r.coeffs) + [Fraction(0)] * (field.degree - len(r.coeffs))
        return cls(field, cs)

    def poly(self) -> RatPoly:
        return RatPoly(self.coords)

    def _coerce(self, other: Any) -> FieldElem | None:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise PreconditionError("elements belong to different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    def __add__(self, other: Any) -> FieldElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.field, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __neg__(self) -> FieldElem:
        return FieldElem(self.field, [-a for a in self.coords])

    def __sub__(self, other: Any) -> FieldElem:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElem(self.field, [a - b for a, b in zip(self.coords, o.coords)])

    def __rsub__(self, other: Any) -> FieldElem:
        return -self + other

    def __mul__(self, other: Any) -> FieldElem:
        if isinstance(other, (int, Fraction)):
            return FieldElem(self.field, [a * other for a in self.coords])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElem._from_poly(self.field, self.poly() * o.poly())

    __rmul__ = __mul__

    def inverse(self) -> FieldElem:
        return elem_inv(self.field, self)

    def __truediv__(self, other: Any) -> FieldElem:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in number field")
            return FieldElem(self.field, [a / other for a in self.coords])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Any) -> FieldElem:
        return self.inverse() * other

    def __pow__(self, e: int) -> FieldElem:
        if e < 0:
            return self.inverse() ** (-e)
        out = self.field.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElem):
            return self.field == other.field and self.coords == other.coords
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return f"FieldElem({[str(c) for c in self.coords]})"

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise PreconditionError("element is not rational")
        return self.coords[0]

    def denominator(self) -> int:
        return lcm(*(c.denominator for c in self.coords))

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coords]


def elem_add(field: NumberField, a: FieldElem, b: FieldElem) -> FieldElem:
    return a + b


def elem_mul(field: NumberField, a: FieldElem, b: FieldElem) -> FieldElem:
    return a * b


def elem_inv(field: NumberField, a: FieldElem) -> FieldElem:
    if a.is_zero():
        raise ZeroDivisionError("inverse of zero")
    # extended Euclid on (a(x), m_theta(x))
    r0, r1 = field._theta_poly, a.poly()
    s0, s1 = RatPoly(), RatPoly([1])
    while len(r1.coeffs) > 1:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if r1.is_zero():
        raise PreconditionError("element shares a factor with the minimal polynomial")
    return FieldElem._from_poly(field, s1 / r1.coeffs[0])


def mult_matrix(field: NumberField, a: FieldElem) -> list[list[Fraction]]:
    """Matrix of x -> a*x; column j holds the coordinates of a*theta^j."""
    cols = []
    basis = field.one()
    theta = field.theta()
    for _ in range(field.degree):
        cols.append((a * basis).coords)
        basis = basis * theta
    n = field.degree
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def norm(field: NumberField, a: FieldElem) -> Fraction:
    return det(mult_matrix(field, a))


def trace(field: NumberField, a: FieldElem) -> Fraction:
    m = mult_matrix(field, a)
    return sum((m[i][i] for i in range(field.degree)), Fraction(0))


def min_poly_of_elem(field: NumberField, a: FieldElem) -> RatPoly:
    """Monic minimal polynomial over Q: first linear relation among 1, a, a^2, ..."""
    powers = [field.one()]
    for d in range(1, field.degree + 1):
        powers.append(powers[-1] * a)
        cols = [pw.coords for pw in powers[:d]]
        matrix = [[cols[j][i] for j in range(d)] for i in range(field.degree)]
        x = solve(matrix, [-c for c in powers[d].coords])
        if x is not None:
            return RatPoly(list(x) + [1])
    raise AssertionError("no relation found up to the field degree")


def is_integral(field: NumberField, a: FieldElem) -> bool:
    return min_poly_of_elem(field, a).is_integral()


def norm_quotient(field: NumberField, a: FieldElem) -> FieldElem:
    """N(a)/a for an algebraic integer a."""
    if a.is_zero():
        raise PreconditionError("norm quotient of zero")
    if not is_integral(field, a):
        raise PreconditionError("element is not an algebraic integer")
    return a.inverse() * norm(field, a)


def binom_elem(a: FieldElem, k: int) -> FieldElem:
    """binom(a, k) = a (a-1) ... (a-k+1) / k!."""
    out = a.field.one()
    for i in range(k):
        out = out * (a - i)
    return out / factorial(k)
