"""Constructive proof that -1 lies in R+(alpha) when alpha is algebraic and
not a nonnegative integer.

Given the minimal polynomial p of alpha we look for s(x) such that r = p*s has
nonnegative binomial coefficients with r(0) > 0. Since r(alpha) = 0, the
binomial expansion of r rearranges into a certificate for -1.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from sympy import Matrix, Rational
from sympy.solvers.simplex import InfeasibleLPError, linprog

from .certificates import Certificate, verify_certificate
from .errors import InternalInconsistency, PreconditionError, SearchBudgetExhausted
from .linalg import solve
from .numfield import NumberField
from .poly import RatPoly, to_binomial_basis
from .rplus_poly import PnkTable, next_column

log = logging.getLogger(__name__)


@dataclass
class CertSearchState:
    p: RatPoly
    t: int
    N: int
    calK: int
    q: RatPoly
    K: int
    m: int


def has_nonnegative_integer_root(p: RatPoly) -> bool:
    ints = p.primitive().int_coeffs()
    if ints[0] == 0:
        return True
    c0 = abs(ints[0])
    return any(p(n) == 0 for n in range(1, c0 + 1) if c0 % n == 0)


def _binomial_coeffs(p: RatPoly) -> list[int]:
    return [int(c) for c in to_binomial_basis(p).coeffs]


def _is_positive_multiplier(P: RatPoly, s: RatPoly) -> bool:
    r = to_binomial_basis(P * s).coeffs
    return bool(r) and r[0] > 0 and all(c >= 0 for c in r)


def _frac(v) -> Fraction:
    v = Rational(v)
    return Fraction(int(v.p), int(v.q))


def lp_multiplier(P: RatPoly, d: int) -> list[int] | None:
    """Integer s of degree <= d minimising the coefficient sum of P*s, or None.

    Exact simplex over the constraints (P*s)_0 >= 1 and (P*s)_n >= 0,
    where (P*s)_n = sum_j s_j p_nj. Variables are split into positive and
    negative parts because every simplex variable is nonnegative.
    """
    t = len(P.coeffs) - 1
    table = PnkTable(P)
    rows = t + d + 1
    A = [[table.entry(n, j) for j in range(d + 1)] for n in range(rows)]
    a_ub = Matrix([[-x for x in row] + list(row) for row in A])
    b_ub = Matrix([-1] + [0] * (rows - 1))
    cost = [sum(A[n][j] for n in range(rows)) for j in range(d + 1)]
    c = Matrix([cost + [-x for x in cost]])
    try:
        _, x = linprog(c, a_ub, b_ub)
    except InfeasibleLPError:
        return None
    sol = [_frac(x[j]) - _frac(x[j + d + 1]) for j in range(d + 1)]
    den = lcm(*(v.denominator for v in sol))
    return [int(v * den) for v in sol]


def construct_multiplier(P: RatPoly, max_rounds: int = 4, k_budget: int = 20000) -> tuple[list[int], CertSearchState]:
    """The threshold construction for an integer polynomial P with positive
    leading binomial coefficient, with iterative deepening on calK."""
    a = _binomial_coeffs(P)
    t = len(a) - 1
    N = t * t * max(abs(x) for x in a) + 2 * t
    table = PnkTable(P)
    size = N + 3
    A = [[table.entry(n, l) for l in range(size)] for n in range(size)]
    calK = N + 3
    for _ in range(max_rounds):
        target = [Fraction(1)] + [abs(table.entry(n, calK)) for n in range(1, size)]
        q = solve(A, target)
        if q is None:
            raise InternalInconsistency("coefficient matrix is singular although p(n) != 0")
        m = lcm(*(v.denominator for v in q))
        q_int = [int(v * m) for v in q]
        r = [sum(q_int[l] * table.entry(n, l) for l in range(size)) for n in range(size + t)]
        col = [table.entry(n, calK) for n in range(calK + t + 1)]
        base = N + 1
        scale = 1
        for K in range(calK, calK + k_budget):
            if K > calK:
                col = next_column(col)
                scale *= base
            length = max(len(col), len(r))
            ok = scale * r[0] + col[0] > 0 and all(
                scale * (r[n] if n < len(r) else 0) + (col[n] if n < len(col) else 0) >= 0
                for n in range(1, length)
            )
            if ok:
                s = [c * scale for c in q_int] + [0] * max(0, K + 1 - size)
                s[K] += 1
                state = CertSearchState(P, t, N, calK, RatPoly(q_int), K, m)
                return [int(c) for c in s], state
        log.debug("calK=%d failed within %d steps; doubling", calK, k_budget)
        calK *= 2
    raise SearchBudgetExhausted("positive multiplier search exceeded its budget")


def find_positive_multiplier(
    p: RatPoly, d_max: int = 12, prepass: bool = True, max_rounds: int = 4, k_budget: int = 20000
) -> RatPoly:
    """s with all binomial coefficients of p*s nonnegative and p(0)s(0) > 0.

    p*s has integer binomial coefficients.
    """
    if p.is_zero():
        raise PreconditionError("p must be nonzero")
    if has_nonnegative_integer_root(p):
        raise PreconditionError(f"{p} vanishes at a nonnegative integer")
    P = p.primitive()
    c = P.lead / p.lead  # P = c * p
    s_int: list[int] | None = None
    if prepass:
        for d in range(d_max + 1):
            s_int = lp_multiplier(P, d)
            if s_int is not None:
                break
    if s_int is None:
        s_int, _ = construct_multiplier(P, max_rounds, k_budget)
    s = RatPoly(s_int) * c
    if not _is_positive_multiplier(p, s):
        raise InternalInconsistency("multiplier failed exhaustive verification")
    return s


def certify_negative_one(field: NumberField, **kwargs) -> Certificate:
    alpha = field.alpha()
    if field.degree == 1:
        a = alpha.rational()
        if a.denominator == 1 and a >= 0:
            raise PreconditionError("alpha is a nonnegative integer, so R+(alpha) contains no negatives")
        if a.denominator == 1:
            # -1 = (-a - 1) + a for a negative integer a
            terms = tuple(x for x in ((0, int(-a - 1)), (1, 1)) if x[1])
            cert = Certificate(field.from_rational(-1), terms)
            if not verify_certificate(field, cert):
                raise InternalInconsistency("integer certificate failed")
            return cert
    p = RatPoly(field.min_poly)
    s = find_positive_multiplier(p, **kwargs)
    r = [int(x) for x in to_binomial_basis(p * s).coeffs]
    terms = [(0, r[0] - 1)] + [(i, a) for i, a in enumerate(r) if i > 0]
    cert = Certificate(field.from_rational(-1), tuple((k, a) for k, a in terms if a))
    if not verify_certificate(field, cert):
        raise InternalInconsistency("-1 certificate failed verification")
    return cert
