"""The semiring R+(x) of polynomials with nonnegative integer coefficients in
the binomial basis, and the tables p_nk = (Delta^n (x^k p))(0)."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Any, Iterable, Sequence

from .errors import InternalInconsistency, PreconditionError
from .linalg import det
from .poly import BinomPoly, RatPoly, forward_differences, from_binomial_basis, to_binomial_basis


class RPlusPoly:
    """Element of R+(x): coeffs[k] >= 0 multiplies binom(x, k)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = []
        for c in coeffs:
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise PreconditionError(f"non-integral coefficient {c}")
                c = c.numerator
            if not isinstance(c, int) or c < 0:
                raise PreconditionError(f"coefficient {c!r} is not a nonnegative integer")
            cs.append(c)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[int, ...] = tuple(cs)

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, int]]) -> RPlusPoly:
        acc: dict[int, int] = {}
        for k, a in terms:
            acc[k] = acc.get(k, 0) + a
        top = max(acc, default=-1)
        return cls([acc.get(k, 0) for k in range(top + 1)])

    def terms(self) -> list[tuple[int, int]]:
        return [(k, a) for k, a in enumerate(self.coeffs) if a]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RPlusPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("rplus", self.coeffs))

    def __repr__(self) -> str:
        return f"RPlusPoly({list(self.coeffs)})"

    def __add__(self, other: RPlusPoly) -> RPlusPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        get = lambda cs, i: cs[i] if i < len(cs) else 0
        return RPlusPoly([get(self.coeffs, i) + get(other.coeffs, i) for i in range(n)])

    def scale(self, c: int) -> RPlusPoly:
        return RPlusPoly([a * c for a in self.coeffs])

    def __mul__(self, other: RPlusPoly) -> RPlusPoly:
        if not self.coeffs or not other.coeffs:
            return RPlusPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for k, a in enumerate(self.coeffs):
            if not a:
                continue
            for l, b in enumerate(other.coeffs):
                if not b:
                    continue
                for j, c in enumerate(binom_product(k, l).coeffs):
                    if c:
                        out[j] += a * b * int(c)
        return RPlusPoly(out)

    def value_at(self, n: int) -> int:
        return sum(a * comb(n, k) for k, a in enumerate(self.coeffs))

    def to_poly(self) -> RatPoly:
        return from_binomial_basis(self.coeffs)

    def to_binom(self) -> BinomPoly:
        return BinomPoly(self.coeffs)


def is_in_rplus_x(p: RatPoly) -> bool:
    return all(c.denominator == 1 and c >= 0 for c in to_binomial_basis(p).coeffs)


@lru_cache(maxsize=4096)
def binom_product(k: int, l: int) -> BinomPoly:
    """binom(x,k) * binom(x,l) in the binomial basis."""
    if k < 0 or l < 0:
        raise PreconditionError("indices must be nonnegative")
    out = [0] * (k + l + 1)
    for i in range(l + 1):
        out[k + l - i] += comb(k, i) * comb(k + l - i, k)
    return BinomPoly(out)


def binom_of_poly(f: RPlusPoly, k: int) -> RPlusPoly:
    """Binomial-basis expansion of binom(f(x), k)."""
    if k < 0:
        raise PreconditionError("k must be nonnegative")
    deg = max(len(f.coeffs) - 1, 0)
    values = [comb(f.value_at(n), k) for n in range(k * deg + 1)]
    coeffs = forward_differences(values)
    if any(c < 0 for c in coeffs):
        raise InternalInconsistency(f"binom(f, {k}) has a negative coefficient for f = {f}")
    return RPlusPoly(coeffs)


class PnkTable:
    """Lazily memoized table of p_nk = Delta^n(x^k p)(0).

    Entries come from the alternating closed form
    p_nk = sum_i (-1)^i C(n,i) (n-i)^k p(n-i), with 0^0 = 1.
    Column k vanishes below row 0 and above row k + deg p.
    """

    def __init__(self, base: RatPoly, N: int = 0, K: int = 0):
        self.base = base
        self.t = len(base.coeffs) - 1
        self.N = N
        self.K = K
        self._c: dict[int, Fraction] = {}
        self._entries: dict[tuple[int, int], Fraction] = {}

    def c(self, n: int) -> Fraction:
        v = self._c.get(n)
        if v is None:
            v = self._c[n] = self.base(Fraction(n))
        return v

    def entry(self, n: int, k: int) -> Fraction:
        key = (n, k)
        v = self._entries.get(key)
        if v is not None:
            return v
        if self.base.is_zero() or n > k + self.t:
            v = Fraction(0)
        else:
            v = Fraction(0)
            for i in range(n + 1):
                m = n - i
                term = comb(n, i) * m**k * self.c(m)
                v = v - term if i % 2 else v + term
        self._entries[key] = v
        return v

    def entry_via_delta(self, n: int, k: int) -> Fraction:
        poly = RatPoly([0] * k + [1]) * self.base
        return Fraction(forward_differences([poly(j) for j in range(n + 1)])[n])

    def column(self, k: int, rows: int | None = None) -> list[Fraction]:
        rows = self.N + 1 if rows is None else rows
        return [self.entry(n, k) for n in range(rows)]

    def row(self, n: int, cols: int | None = None) -> list[Fraction]:
        cols = self.K + 1 if cols is None else cols
        return [self.entry(n, k) for k in range(cols)]

    def matrix(self) -> list[list[Fraction]]:
        """Rows n = 0..N, columns k = 0..K."""
        return [self.row(n) for n in range(self.N + 1)]

    def extend(self, K: int) -> PnkTable:
        self.K = max(self.K, K)
        return self

    def recurrence_holds(self) -> bool:
        return all(
            self.entry(n, k) == n * (self.entry(n, k - 1) + self.entry(n - 1, k - 1))
            for n in range(1, self.N + 1)
            for k in range(1, self.K + 1)
        )


def next_column(prev: Sequence[Any]) -> list[Any]:
    """Column k from column k-1 via p_nk = n (p_n(k-1) + p_(n-1)(k-1)); grows by one row."""
    out = [0] * (len(prev) + 1)
    for n in range(1, len(out)):
        above = prev[n] if n < len(prev) else 0
        out[n] = n * (above + prev[n - 1])
    return out


def pnk_table(p: RatPoly, N: int, K: int) -> PnkTable:
    table = PnkTable(p, N, K)
    for n in range(N + 1):
        table.row(n)
    return table


def pnk_det(p: RatPoly, N: int) -> Fraction:
    table = PnkTable(p, N, N)
    return det(table.matrix())
