"""Deciding beta in R+(alpha) through valuations at the p-adic places of
Q(alpha), with closed-form shortcuts for rational, quadratic and cyclotomic
alpha, and the explicit generators alpha_p."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import prod
from typing import Any

import sympy

from .certificates import Certificate
from .errors import InternalInconsistency, PreconditionError
from .numfield import FieldElem, NumberField, min_poly_of_elem, norm, trace
from .padic import (
    INF,
    Place,
    PadicRoot,
    max_poly_valuation_approx,
    place_valuation,
    places,
    precision_cap,
    root_distance,
    zp_roots,
)
from .poly import RatPoly, vp_int, vp_rat

METHODS = ("integer-case", "rational", "quadratic", "cyclotomic", "valuation-general")


@dataclass(frozen=True)
class ValuationWitness:
    """A place over p where alpha has valuation >= 0 but beta is negative."""

    p: int
    place: Place
    alpha_val: int
    beta_val: int

    def to_json(self) -> dict:
        return {
            "kind": "valuation",
            "p": self.p,
            "place": self.place.to_json(),
            "alpha_val": str(self.alpha_val),
            "beta_val": str(self.beta_val),
        }


@dataclass(frozen=True)
class SignWitness:
    """For alpha a nonnegative integer, R+(alpha) is Z>=0; beta is a negative integer."""

    beta: Fraction

    def to_json(self) -> dict:
        return {"kind": "sign", "beta": str(self.beta)}


@dataclass
class MembershipVerdict:
    member: bool
    method: str
    witness: ValuationWitness | SignWitness | None = None
    certificate: Certificate | None = None
    places_checked: list[tuple[int, int]] = dc_field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "member": self.member,
            "method": self.method,
            "witness": None if self.witness is None else self.witness.to_json(),
            "certificate": None if self.certificate is None else self.certificate.to_json(),
            "places_checked": [[p, c] for p, c in self.places_checked],
        }


def _primes_of(n: int) -> list[int]:
    return sorted(sympy.factorint(abs(n))) if abs(n) > 1 else []


def _check_field(field: NumberField, *elems: FieldElem) -> None:
    for e in elems:
        if e.field != field:
            raise PreconditionError("element does not belong to the given field")


def cyclotomic_order(field: NumberField) -> int | None:
    """n > 2 with m_theta = Phi_n, if any."""
    n = field.degree
    if field.delta != 1:
        return None
    x = sympy.Symbol("x")
    target = list(field.theta_min_poly)
    for m in range(3, 2 * n * n + 3):
        if sympy.totient(m) != n:
            continue
        coeffs = [int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(m, x), x).all_coeffs())]
        if coeffs == target:
            return m
    return None


def squarefree_part(n: int) -> int:
    sign = -1 if n < 0 else 1
    out = 1
    for p, e in sympy.factorint(abs(n)).items():
        if e % 2:
            out *= p
    return sign * out


def _check_prime_places(
    field: NumberField, alpha: FieldElem, beta: FieldElem, p: int, start_precision: int
) -> tuple[int, ValuationWitness | None]:
    pls = places(field, p)
    for pl in pls:
        va = place_valuation(pl, alpha, start_precision)
        if va < 0:
            continue
        vb = place_valuation(pl, beta, start_precision)
        if vb < 0:
            return len(pls), ValuationWitness(p, pl, int(va), int(vb))
    return len(pls), None


def _rational_witness(field: NumberField, alpha: FieldElem, beta: FieldElem, p: int) -> ValuationWitness:
    _, w = _check_prime_places(field, alpha, beta, p, 8)
    if w is None:
        raise InternalInconsistency(f"expected a negative valuation at p={p}")
    return w


def _decide_rational(field: NumberField, alpha: FieldElem, beta: FieldElem) -> MembershipVerdict:
    a = alpha.rational()
    b = beta.rational()
    if a.denominator == 1:
        if b.denominator != 1:
            p = _primes_of(b.denominator)[0]
            return MembershipVerdict(False, "integer-case", _rational_witness(field, alpha, beta, p), places_checked=[(p, 1)])
        if a >= 0 and b < 0:
            return MembershipVerdict(False, "integer-case", SignWitness(b))
        return MembershipVerdict(True, "integer-case")
    q = a.denominator
    checked = []
    for p in _primes_of(b.denominator):
        checked.append((p, 1))
        if q % p:
            return MembershipVerdict(False, "rational", _rational_witness(field, alpha, beta, p), places_checked=checked)
    return MembershipVerdict(True, "rational", places_checked=checked)


def _decide_general(
    field: NumberField, alpha: FieldElem, beta: FieldElem, start_precision: int, method: str = "valuation-general"
) -> MembershipVerdict:
    checked = []
    for p in _primes_of(beta.denominator()):
        count, w = _check_prime_places(field, alpha, beta, p, start_precision)
        checked.append((p, count))
        if w is not None:
            return MembershipVerdict(False, method, w, places_checked=checked)
    return MembershipVerdict(True, method, places_checked=checked)


def _p_integral(x: Fraction, p: int) -> bool:
    return x.denominator % p != 0


def _decide_quadratic(field: NumberField, alpha: FieldElem, beta: FieldElem, start_precision: int) -> MembershipVerdict:
    # Both images of beta in Q_p x Q_p are p-integral iff its trace and norm are.
    d = squarefree_part(field.disc)
    tb, nb = trace(field, beta), norm(field, beta)
    ta, na = trace(field, alpha), norm(field, alpha)
    checked = []
    for p in _primes_of(tb.denominator * nb.denominator):
        if quadratic_profile(d, p) != "split":
            checked.append((p, 0))
            continue
        if _p_integral(ta, p) and _p_integral(na, p):
            pls = places(field, p)
            checked.append((p, len(pls)))
            for pl in pls:
                vb = place_valuation(pl, beta, start_precision)
                if vb < 0:
                    va = place_valuation(pl, alpha, start_precision)
                    return MembershipVerdict(False, "quadratic", ValuationWitness(p, pl, int(va), int(vb)), places_checked=checked)
            raise InternalInconsistency("trace/norm criterion disagrees with the places")
        count, w = _check_prime_places(field, alpha, beta, p, start_precision)
        checked.append((p, count))
        if w is not None:
            return MembershipVerdict(False, "quadratic", w, places_checked=checked)
    return MembershipVerdict(True, "quadratic", places_checked=checked)


def _decide_cyclotomic(field: NumberField, n: int, alpha: FieldElem, beta: FieldElem, start_precision: int) -> MembershipVerdict:
    # Z[zeta_n] is the full ring of integers, so a prime in a coordinate
    # denominator that splits completely forces a negative valuation.
    checked = []
    for p in _primes_of(beta.denominator()):
        if cyclotomic_inverse_prime(n, p):
            checked.append((p, 0))
            continue
        count, w = _check_prime_places(field, alpha, beta, p, start_precision)
        checked.append((p, count))
        if w is None:
            raise InternalInconsistency(f"cyclotomic rule predicts a negative valuation at p={p}")
        return MembershipVerdict(False, "cyclotomic", w, places_checked=checked)
    return MembershipVerdict(True, "cyclotomic", places_checked=checked)


def applicable_method(field: NumberField, alpha: FieldElem) -> str:
    if field.degree == 1:
        return "integer-case" if alpha.rational().denominator == 1 else "rational"
    if alpha == field.theta() and cyclotomic_order(field) is not None:
        return "cyclotomic"
    if field.degree == 2:
        return "quadratic"
    return "valuation-general"


def decide_membership(
    field: NumberField,
    alpha: FieldElem | None,
    beta: FieldElem,
    method: str | None = None,
    certify: bool = False,
    start_precision: int = 8,
) -> MembershipVerdict:
    alpha = field.alpha() if alpha is None else alpha
    _check_field(field, alpha, beta)
    if len(min_poly_of_elem(field, alpha).coeffs) - 1 != field.degree:
        raise PreconditionError("alpha does not generate the field")
    default = applicable_method(field, alpha)
    method = default if method is None else method
    if method not in METHODS:
        raise PreconditionError(f"unknown method {method!r}")
    if method in ("integer-case", "rational"):
        if field.degree != 1:
            raise PreconditionError(f"method {method} needs a rational alpha")
        verdict = _decide_rational(field, alpha, beta)
    elif method == "cyclotomic":
        n = cyclotomic_order(field) if alpha == field.theta() else None
        if n is None:
            raise PreconditionError("alpha is not a root of unity of order > 2 generating the field")
        verdict = _decide_cyclotomic(field, n, alpha, beta, start_precision)
    elif method == "quadratic":
        if field.degree != 2:
            raise PreconditionError("quadratic method needs a degree 2 field")
        verdict = _decide_quadratic(field, alpha, beta, start_precision)
    else:
        if field.degree == 1 and alpha.rational().denominator == 1 and alpha.rational() >= 0:
            verdict = _decide_rational(field, alpha, beta)
        else:
            verdict = _decide_general(field, alpha, beta, start_precision)
    if certify and verdict.member:
        from .oracle import search_certificate

        verdict.certificate = search_certificate(field, alpha, beta)
    return verdict


def verify_witness(
    field: NumberField, alpha: FieldElem, beta: FieldElem, witness: ValuationWitness, start_precision: int = 16
) -> bool:
    """Recompute the witness place from scratch and re-derive both valuations."""
    p = witness.p
    prec = witness.place.root.precision
    M = 64 if prec == INF else int(prec)
    target = witness.place.root.approx % p**M
    for root in zp_roots(p, field.theta_min_poly):
        if root.approx_mod(M) != target:
            continue
        pl = Place(field, p, root, 0)
        va = place_valuation(pl, alpha, start_precision)
        vb = place_valuation(pl, beta, start_precision)
        return va >= 0 and vb < 0 and va == witness.alpha_val and vb == witness.beta_val
    return False


def quadratic_profile(d: int, p: int) -> str:
    if d in (0, 1) or squarefree_part(d) != d:
        raise PreconditionError(f"{d} is not a squarefree integer other than 0, 1")
    if not sympy.isprime(p):
        raise PreconditionError(f"{p} is not prime")
    if p == 2:
        return "split" if d % 8 == 1 else "inert-or-ramified"
    if d % p == 0:
        return "inert-or-ramified"
    return "split" if sympy.legendre_symbol(d % p, p) == 1 else "inert-or-ramified"


def cyclotomic_inverse_prime(n: int, p: int) -> bool:
    if n <= 2:
        raise PreconditionError("cyclotomic rule needs n > 2")
    if not sympy.isprime(p):
        raise PreconditionError(f"{p} is not prime")
    return p % n != 1


def inverse_prime_in(field: NumberField, alpha: FieldElem | None, p: int) -> bool:
    alpha = field.alpha() if alpha is None else alpha
    return all(place_valuation(pl, alpha) < 0 for pl in places(field, p))


# --- generators ---------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorAlphaP:
    p: int
    element: FieldElem
    path: str
    construction: dict
    has_nonlinear: bool

    @property
    def trivial(self) -> bool:
        """True when the element already lies in Z[theta]."""
        return all(c.denominator == 1 for c in self.element.coords)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "path": self.path,
            "element": self.element.to_json(),
            "trivial": self.trivial,
            "construction": self.construction,
        }


def _residual_bound(field: NumberField, p: int, roots: list[PadicRoot]) -> int:
    """Upper bound for v_p(z - y) over z in Z_p and roots y of the nonlinear part."""
    g = list(field.theta_min_poly)
    cap = precision_cap(p, g)
    W = 16
    while True:
        modulus = p**W
        h = [c % modulus for c in g]
        for r in roots:
            a = r.approx_mod(W)
            # synthetic division by (x - a)
            out = [0] * (len(h) - 1)
            carry = 0
            for i in range(len(h) - 1, 0, -1):
                carry = (h[i] + carry * a) % modulus
                out[i - 1] = carry
            rem = (h[0] + carry * a) % modulus
            if rem:
                raise InternalInconsistency("certified root does not divide the minimal polynomial")
            h = out
        bound = max_poly_valuation_approx(p, h, W, cap)
        if bound is not None:
            return bound
        W *= 2
        if W > 4 * cap + 64:
            raise InternalInconsistency("residual factor valuation did not stabilise")


def _ev(g, x: int) -> int:
    return sum(c * x**i for i, c in enumerate(g))


def _alpha_p_theta(field: NumberField, p: int) -> GeneratorAlphaP:
    if not sympy.isprime(p):
        raise PreconditionError(f"{p} is not prime")
    theta = field.theta()
    g = field.theta_min_poly
    n = field.degree
    if field.disc % p:
        rs = [r for r in range(p) if _ev(g, r) % p == 0]
        # g'(r) is a unit, so the root agrees with r mod p^2 iff g(r) does
        r_i = [r + p if _ev(g, r) % (p * p) == 0 else r for r in rs]
        elem = prod((theta - r for r in r_i), start=field.one()) / p
        return GeneratorAlphaP(p, elem, "fast", {"roots_mod_p": rs, "r_i": r_i}, len(rs) < n)
    roots = zp_roots(p, g)
    q = len(roots)
    if q == 0:
        return GeneratorAlphaP(p, field.from_rational(Fraction(1, p)), "general", {"roots": [], "q": 0}, True)
    dist = [[0] * q for _ in range(q)]
    for i in range(q):
        for j in range(i + 1, q):
            dist[i][j] = dist[j][i] = root_distance(roots[i], roots[j])
    k = 1 + max((dist[i][j] for i in range(q) for j in range(q) if i != j), default=0)
    k_i = [sum(dist[i][j] for j in range(q) if j != i) for i in range(q)]
    K = max(k_i)
    m_i = [K - ki + k for ki in k_i]
    N = _residual_bound(field, p, roots) if q < n else 0
    r_i = []
    for i, root in enumerate(roots):
        e = m_i[i] + q * N
        r = root.approx_mod(e)
        if root.approx_mod(e + 1) == r:
            r += p**e
        r_i.append(r)
    exponent = K + k + q * N
    elem = prod((theta - r for r in r_i), start=field.one()) / p**exponent
    construction = {
        "roots": [str(rt.approx_mod(max(m_i) + q * N + 1)) for rt in roots],
        "q": q,
        "k": k,
        "k_i": k_i,
        "K": K,
        "m_i": m_i,
        "N": N,
        "r_i": [str(r) for r in r_i],
        "exponent": exponent,
    }
    return GeneratorAlphaP(p, elem, "general", construction, q < n)


def alpha_p(field: NumberField, p: int) -> GeneratorAlphaP:
    if field.delta != 1:
        raise PreconditionError("alpha_p needs an algebraic integer; use the integral part")
    return _alpha_p_theta(field, p)


@dataclass
class Presentation:
    """R+(alpha) = O[generators..., adjoined...] with O the ring of integers."""

    generators: list[GeneratorAlphaP]
    adjoined: list[FieldElem]

    def __iter__(self):
        return iter(self.generators)

    def to_json(self) -> dict:
        return {
            "generators": [g.to_json() for g in self.generators],
            "adjoined": [a.to_json() for a in self.adjoined],
        }


def generator_presentation(field: NumberField, alpha: FieldElem | None, prime_bound: int = 50) -> Presentation:
    if prime_bound < 2:
        raise PreconditionError("prime bound must be at least 2")
    alpha = field.alpha() if alpha is None else alpha
    if alpha != field.alpha():
        raise PreconditionError("present the field by the minimal polynomial of alpha")
    gens = [_alpha_p_theta(field, p) for p in sympy.primerange(2, prime_bound + 1)]
    adjoined = [alpha] if field.delta > 1 else []
    return Presentation(gens, adjoined)
