"""Dense exact-rational polynomials, the binomial-coefficient basis and the
finite-difference calculus."""

from __future__ import annotations

import re
from fractions import Fraction
from math import comb, gcd
from typing import Any, Iterable, Sequence

from sympy import isprime

from .errors import PreconditionError

Rat = Fraction
NEG_INF = float("-inf")


def as_rat(x: Any) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def _trim(cs: list[Fraction]) -> tuple[Fraction, ...]:
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


class RatPoly:
    """Polynomial over Q with ascending monomial coefficients.

    The zero polynomial has no coefficients and degree ``NEG_INF``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Any] = ()):
        self.coeffs: tuple[Fraction, ...] = _trim([as_rat(c) for c in coeffs])

    @classmethod
    def x(cls) -> RatPoly:
        return cls([0, 1])

    @classmethod
    def const(cls, c: Any) -> RatPoly:
        return cls([c])

    @property
    def degree(self) -> int | float:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RatPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == RatPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"RatPoly({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)

    @staticmethod
    def _lift(other: Any) -> RatPoly:
        return other if isinstance(other, RatPoly) else RatPoly([other])

    def __add__(self, other: Any) -> RatPoly:
        if not isinstance(other, (RatPoly, int, Fraction)):
            return NotImplemented
        o = self._lift(other).coeffs
        n = max(len(self.coeffs), len(o))
        return RatPoly([self.coeff(i) + (o[i] if i < len(o) else 0) for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> RatPoly:
        return RatPoly([-c for c in self.coeffs])

    def __sub__(self, other: Any) -> RatPoly:
        if not isinstance(other, (RatPoly, int, Fraction)):
            return NotImplemented
        return self + (-self._lift(other))

    def __rsub__(self, other: Any) -> RatPoly:
        return self._lift(other) - self

    def __mul__(self, other: Any) -> RatPoly:
        if isinstance(other, (int, Fraction)):
            return RatPoly([c * other for c in self.coeffs])
        if not isinstance(other, RatPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RatPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, c: Any) -> RatPoly:
        c = as_rat(c)
        return RatPoly([a / c for a in self.coeffs])

    def __pow__(self, n: int) -> RatPoly:
        out = RatPoly([1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __call__(self, x: Any) -> Any:
        acc: Any = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, other: RatPoly) -> tuple[RatPoly, RatPoly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        d = len(other.coeffs) - 1
        if len(r) - 1 < d:
            return RatPoly(), RatPoly(r)
        q = [Fraction(0)] * (len(r) - d)
        lc = other.lead
        for i in range(len(r) - 1, d - 1, -1):
            c = r[i] / lc
            q[i - d] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    r[i - d + j] -= c * b
        return RatPoly(q), RatPoly(r[:d])

    def __mod__(self, other: RatPoly) -> RatPoly:
        return self.divmod(other)[1]

    def __floordiv__(self, other: RatPoly) -> RatPoly:
        return self.divmod(other)[0]

    def derivative(self) -> RatPoly:
        return RatPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def compose(self, inner: RatPoly) -> RatPoly:
        acc = RatPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def shift(self, a: Any) -> RatPoly:
        """p(x + a)."""
        return self.compose(RatPoly([a, 1]))

    def monic(self) -> RatPoly:
        return self / self.lead if self.coeffs else self

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise PreconditionError(f"{self} has non-integer coefficients")
        return [int(c) for c in self.coeffs]

    def primitive(self) -> RatPoly:
        """Integer multiple with coprime coefficients and positive leading term."""
        if self.is_zero():
            return self
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for c in ints:
            g = gcd(g, c)
        sign = 1 if ints[-1] > 0 else -1
        return RatPoly([sign * c // g for c in ints])


def poly_gcd(a: RatPoly, b: RatPoly) -> RatPoly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def binom_poly(k: int) -> RatPoly:
    """binom(x, k) in the monomial basis."""
    out = RatPoly([1])
    for i in range(k):
        out = out * RatPoly([Fraction(-i, i + 1), Fraction(1, i + 1)])
    return out


class BinomPoly:
    """Polynomial written as sum of coeffs[k] * binom(x, k)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Any] = ()):
        self.coeffs: tuple[Fraction, ...] = _trim([as_rat(c) for c in coeffs])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinomPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("binom", self.coeffs))

    def __repr__(self) -> str:
        return f"BinomPoly({[str(c) for c in self.coeffs]})"

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def to_poly(self) -> RatPoly:
        return from_binomial_basis(self)


def forward_differences(values: Sequence[Any]) -> list[Any]:
    """Leading entries (Delta^i f)(0) of the difference table of f(0), f(1), ..."""
    row = list(values)
    out = []
    while row:
        out.append(row[0])
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
    return out


def to_binomial_basis(p: RatPoly) -> BinomPoly:
    if p.is_zero():
        return BinomPoly()
    return BinomPoly(forward_differences([p(n) for n in range(len(p.coeffs))]))


def from_binomial_basis(b: BinomPoly | Sequence[Any]) -> RatPoly:
    coeffs = b.coeffs if isinstance(b, BinomPoly) else [as_rat(c) for c in b]
    out = RatPoly()
    basis = RatPoly([1])
    for k, c in enumerate(coeffs):
        if c:
            out = out + basis * c
        basis = basis * RatPoly([Fraction(-k, k + 1), Fraction(1, k + 1)])
    return out


def delta(p: RatPoly) -> RatPoly:
    return p.shift(1) - p


def delta_n(p: RatPoly, n: int) -> RatPoly:
    for _ in range(n):
        p = delta(p)
    return p


def delta_n_closed(p: RatPoly, n: int) -> RatPoly:
    """sum_i (-1)^i C(n,i) p(x + n - i)."""
    out = RatPoly()
    for i in range(n + 1):
        term = p.shift(n - i) * comb(n, i)
        out = out - term if i % 2 else out + term
    return out


def leibniz_delta_n(p: RatPoly, q: RatPoly, n: int) -> RatPoly:
    out = RatPoly()
    for i in range(n + 1):
        out = out + delta_n(p, n - i).shift(i) * delta_n(q, i) * comb(n, i)
    return out


def vp_int(p: int, n: int) -> int | float:
    """Exponent of p in the integer n; infinity for n = 0."""
    if n == 0:
        return float("inf")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_rat(p: int, x: Fraction) -> int | float:
    x = as_rat(x)
    if x == 0:
        return float("inf")
    return vp_int(p, x.numerator) - vp_int(p, x.denominator)


def vp_factorial(p: int, k: int) -> int:
    if not isprime(p):
        raise PreconditionError(f"{p} is not prime")
    if k < 0:
        raise PreconditionError("k must be nonnegative")
    total, q = 0, p
    while q <= k:
        total += k // q
        q *= p
    return total


# --- text format -----------------------------------------------------------

_NUM = r"\d+(?:/\d+)?"
_TERM = re.compile(rf"^\(?({_NUM})?\)?\*?(x(?:\^(\d+))?)?(?:/(\d+))?$")
_LIST = re.compile(rf"^\s*[-+]?{_NUM}(\s*,\s*[-+]?{_NUM})*\s*$")


def parse_poly(text: str) -> RatPoly:
    """Parse "-2,-1,1" (ascending coefficients) or "x^2-x-2"."""
    s = text.strip()
    if not s:
        raise PreconditionError("empty polynomial")
    if _LIST.match(s):
        return RatPoly([Fraction(t.strip()) for t in s.split(",")])
    s = s.replace(" ", "").replace("**", "^")
    if s[0] not in "+-":
        s = "+" + s
    coeffs: dict[int, Fraction] = {}
    for sign, body in re.findall(r"([+-])([^+-]*)", s):
        m = _TERM.match(body)
        if not body or not m or (m.group(1) is None and m.group(2) is None):
            raise PreconditionError(f"cannot parse term {sign}{body!r} in {text!r}")
        c = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        if m.group(4):
            if m.group(2) is None:
                raise PreconditionError(f"cannot parse term {sign}{body!r} in {text!r}")
            c /= int(m.group(4))
        if m.group(2) is None:
            e = 0
        else:
            e = int(m.group(3)) if m.group(3) else 1
        coeffs[e] = coeffs.get(e, Fraction(0)) + (c if sign == "+" else -c)
    top = max(coeffs)
    return RatPoly([coeffs.get(i, 0) for i in range(top + 1)])


def format_poly(p: RatPoly, var: str = "x") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for e in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[e]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        if mono and a == 1:
            body = mono
        elif mono and a.denominator != 1:
            body = f"({a}){mono}"
        else:
            body = f"{a}{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += sign + body
    return out
