"""Certified roots of integer polynomials in Z_p and valuations at the
corresponding embeddings Q(alpha) -> Q_p."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from sympy import isprime

from .errors import InternalInconsistency, PrecisionCapExceeded, PreconditionError
from .numfield import FieldElem, NumberField, discriminant, sylvester_resultant
from .poly import RatPoly, poly_gcd, vp_int

INF = math.inf
CAP_ENV = "RPLUS_PRECISION_CAP"


def _eval(coeffs: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _deriv(coeffs: Sequence[int]) -> list[int]:
    return [i * c for i, c in enumerate(coeffs)][1:]


def precision_cap(p: int, g: Sequence[int]) -> int:
    env = os.environ.get(CAP_ENV)
    if env:
        return int(env)
    d = discriminant(RatPoly(g))
    return int(vp_int(p, d.numerator)) + 2 * (len(g) - 1) + 16


def _check_prime(p: int) -> None:
    if not isprime(p):
        raise PreconditionError(f"{p} is not prime")


@dataclass(frozen=True)
class PadicApprox:
    """value mod p^precision; the digits below precision are certified."""

    p: int
    value: int
    precision: int

    def valuation(self) -> int | None:
        """Exact valuation, or None when the value is 0 to the known precision."""
        v = self.value % self.p**self.precision
        return None if v == 0 else int(vp_int(self.p, v))

    def __add__(self, other: PadicApprox) -> PadicApprox:
        prec = min(self.precision, other.precision)
        return PadicApprox(self.p, (self.value + other.value) % self.p**prec, prec)

    def __mul__(self, other: PadicApprox) -> PadicApprox:
        va = self.valuation()
        vb = other.valuation()
        va = self.precision if va is None else va
        vb = other.precision if vb is None else vb
        prec = min(self.precision + vb, other.precision + va)
        return PadicApprox(self.p, (self.value * other.value) % self.p**prec, prec)


@dataclass(frozen=True)
class PadicRoot:
    """Root z of poly in Z_p with z = approx mod p^precision.

    hensel_margin = (v_p(g(approx)), v_p(g'(approx))) with the first strictly
    larger than twice the second; precision is their difference (infinite
    for exact integer roots).
    """

    p: int
    poly: tuple[int, ...]
    approx: int
    precision: int | float
    hensel_margin: tuple[int | float, int]

    def approx_mod(self, M: int) -> int:
        r = self if self.precision >= M else refine_root(self, M)
        return r.approx % self.p**M

    def to_padic(self, M: int) -> PadicApprox:
        return PadicApprox(self.p, self.approx_mod(M), M)


def _squarefree_check(g: Sequence[int]) -> None:
    poly = RatPoly(g)
    if len(poly.coeffs) < 2:
        raise PreconditionError("polynomial must be nonconstant")
    if len(poly_gcd(poly, poly.derivative()).coeffs) > 1:
        raise PreconditionError(f"{poly} is not squarefree")


def zp_roots(p: int, g: Sequence[int], cap: int | None = None) -> list[PadicRoot]:
    """All roots of the monic squarefree integer polynomial g in Z_p."""
    _check_prime(p)
    g = tuple(int(c) for c in g)
    if len(g) < 2 or g[-1] != 1:
        raise PreconditionError("polynomial must be monic with integer coefficients")
    _squarefree_check(g)
    cap = precision_cap(p, g) if cap is None else cap
    dg = _deriv(g)
    roots: list[PadicRoot] = []
    stack = [(a, 1) for a in range(p - 1, -1, -1)]
    while stack:
        a, j = stack.pop()
        ga = _eval(g, a)
        vg = vp_int(p, ga)
        if vg < j:
            continue
        da = _eval(dg, a)
        vd = vp_int(p, da)
        if vd < j and vg > 2 * vd:
            # unique root in the ball a + p^j Z_p, at distance vg - vd from a
            if vg - vd >= j:
                roots.append(PadicRoot(p, g, a, vg - vd, (vg, int(vd))))
            continue
        if j >= cap:
            raise PrecisionCapExceeded(f"root search for {g} at p={p} exceeded depth {cap}")
        step = p**j
        for i in range(p - 1, -1, -1):
            stack.append((a + i * step, j + 1))
    return roots


def refine_root(r: PadicRoot, M: int) -> PadicRoot:
    """Newton iteration until the approximation is certified mod p^M."""
    if r.precision >= M:
        return r
    p, g = r.p, r.poly
    dg = _deriv(g)
    vd = r.hensel_margin[1]
    a = r.approx
    modulus = p ** (2 * M + 2 * vd + 2)
    for _ in range(4 * M + 64):
        ga = _eval(g, a)
        if ga == 0:
            return PadicRoot(p, g, a, INF, (INF, vd))
        vg = vp_int(p, ga)
        if vg - vd >= M:
            return PadicRoot(p, g, a, vg - vd, (vg, vd))
        da = _eval(dg, a)
        unit = da // p**vd
        t = ga // p**vd
        a = (a - t * pow(unit, -1, modulus)) % modulus
    raise InternalInconsistency("Newton iteration failed to converge")


@dataclass(frozen=True)
class Place:
    """Embedding of the field into Q_p sending theta to a root of m_theta."""

    field: NumberField
    p: int
    root: PadicRoot
    alpha_val: int | float

    def to_json(self) -> dict:
        prec = self.root.precision
        exact = prec == INF
        return {
            "p": self.p,
            "root_mod": str(self.root.approx if exact else self.root.approx % self.p**prec),
            "precision": "exact" if exact else prec,
            "v_alpha": str(self.alpha_val),
        }


def places(field: NumberField, p: int) -> list[Place]:
    out = []
    for root in zp_roots(p, field.theta_min_poly):
        proto = Place(field, p, root, 0)
        out.append(Place(field, p, root, place_valuation(proto, field.alpha())))
    return out


def place_valuation(place: Place, a: FieldElem, start_precision: int = 8) -> int | float:
    """v_p of the image of a under the place, with adaptive precision."""
    if a.is_zero():
        return INF
    p = place.p
    den = lcm(*(c.denominator for c in a.coords))
    rhat = [int(c * den) for c in a.coords]
    correction = int(vp_int(p, den))
    root = place.root
    if root.precision == INF:
        return int(vp_int(p, _eval(rhat, root.approx))) - correction
    M = max(start_precision, 1)
    bound = None
    while True:
        z = root.approx_mod(M)
        val = _eval(rhat, z) % p**M
        if val:
            return int(vp_int(p, val)) - correction
        if bound is None:
            res = sylvester_resultant(RatPoly(place.field.theta_min_poly), RatPoly(rhat))
            if res == 0:
                raise InternalInconsistency("nonzero element has zero resultant")
            bound = int(vp_int(p, res.numerator)) + 1
        if M > bound:
            raise InternalInconsistency("valuation exceeds the resultant bound")
        M *= 2


class _NeedPrecision(Exception):
    pass


def _max_valuation_tree(p: int, g: Sequence[int], cap: int, modulus_exp: int | None) -> int:
    best = 0
    mod = p**modulus_exp if modulus_exp is not None else None
    stack = [(a, 1) for a in range(p - 1, -1, -1)]
    while stack:
        a, j = stack.pop()
        val = _eval(g, a)
        if mod is not None:
            val %= mod
            if val == 0:
                raise _NeedPrecision
        v = vp_int(p, val)
        if v < j:
            best = max(best, int(v))
            continue
        if j >= cap:
            raise PrecisionCapExceeded(f"valuation search for {tuple(g)} at p={p} exceeded depth {cap}")
        step = p**j
        for i in range(p - 1, -1, -1):
            stack.append((a + i * step, j + 1))
    return best


def max_poly_valuation(p: int, g: Sequence[int]) -> int:
    """max over z in Z_p of v_p(g(z)) for monic g without roots in Z_p."""
    _check_prime(p)
    g = tuple(int(c) for c in g)
    if g[-1] != 1:
        raise PreconditionError("polynomial must be monic")
    try:
        return _max_valuation_tree(p, g, precision_cap(p, g), None)
    except _NeedPrecision:  # pragma: no cover - exact mode never asks
        raise InternalInconsistency("unreachable")


def max_poly_valuation_approx(p: int, g_mod: Sequence[int], W: int, cap: int) -> int | None:
    """Same maximum for a polynomial known only mod p^W; None if W is too small."""
    try:
        return _max_valuation_tree(p, g_mod, cap, W)
    except _NeedPrecision:
        return None


def root_distance(a: PadicRoot, b: PadicRoot) -> int:
    """v_p(a - b) for distinct roots."""
    M = 8
    while True:
        d = (a.approx_mod(M) - b.approx_mod(M)) % a.p**M
        if d:
            return int(vp_int(a.p, d))
        M *= 2
        if M > 1 << 16:
            raise InternalInconsistency("roots do not separate")
