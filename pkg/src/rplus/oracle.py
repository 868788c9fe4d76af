"""Independent cross-checks: bounded certificate search, random members and
constructive certificates for quadratic fields."""

from __future__ import annotations

import random
from fractions import Fraction
from math import factorial, isqrt, lcm

import sympy

from .certificates import CertAlgebra, Certificate, binomial_values, evaluate
from .errors import InternalInconsistency, PreconditionError
from .linalg import solve
from .membership import quadratic_profile, squarefree_part
from .numfield import FieldElem, NumberField, field_from_min_poly


def brute_force_search(
    field: NumberField,
    alpha: FieldElem,
    beta: FieldElem,
    K: int,
    A: int,
    node_limit: int | None = None,
) -> tuple[Certificate | None, bool]:
    """Search a_0..a_K in [0, A] with sum a_k binom(alpha, k) = beta.

    Returns (certificate, complete). The indices K, K-1, ..., n are
    enumerated in increasing value order; the first n indices are solved
    from the remaining linear system. A branch is cut when the residual is
    outside the box spanned by the remaining terms or off the lattice
    generated by their coordinate denominators. The first hit is the
    lexicographically least tuple (a_K, ..., a_0).
    """
    n = field.degree
    vals = [v.coords for v in binomial_values(alpha, K)]
    solved = list(range(min(n, K + 1)))
    free = list(range(K, len(solved) - 1, -1))
    solved_matrix = [[vals[k][c] for k in solved] for c in range(n)]

    # suffix data: remaining indices after position i of `free`, plus the solved block
    suffix_lo, suffix_hi, suffix_den = [], [], []
    for i in range(len(free) + 1):
        rest = free[i:] + solved
        lo = [sum((A * min(Fraction(0), vals[k][c]) for k in rest), Fraction(0)) for c in range(n)]
        hi = [sum((A * max(Fraction(0), vals[k][c]) for k in rest), Fraction(0)) for c in range(n)]
        den = lcm(1, *(x.denominator for k in rest for x in vals[k]))
        suffix_lo.append(lo)
        suffix_hi.append(hi)
        suffix_den.append(den)

    nodes = 0
    chosen: dict[int, int] = {}

    def feasible(residual: list[Fraction], i: int) -> bool:
        den = suffix_den[i]
        for c in range(n):
            r = residual[c]
            if r < suffix_lo[i][c] or r > suffix_hi[i][c]:
                return False
            if (r * den).denominator != 1:
                return False
        return True

    class _Stop(Exception):
        pass

    def finish(residual: list[Fraction]) -> Certificate | None:
        x = solve(solved_matrix, residual)
        if x is None or any(v.denominator != 1 or v < 0 or v > A for v in x):
            return None
        values = dict(chosen)
        values.update({k: int(v) for k, v in zip(solved, x)})
        terms = tuple((k, values[k]) for k in sorted(values) if values[k])
        return Certificate(beta, terms)

    def rec(i: int, residual: list[Fraction]) -> Certificate | None:
        nonlocal nodes
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            raise _Stop
        if not feasible(residual, i):
            return None
        if i == len(free):
            return finish(residual)
        k = free[i]
        for a in range(A + 1):
            chosen[k] = a
            nxt = [residual[c] - a * vals[k][c] for c in range(n)]
            found = rec(i + 1, nxt)
            if found is not None:
                return found
        del chosen[k]
        return None

    try:
        cert = rec(0, list(beta.coords))
    except _Stop:
        return None, False
    if cert is not None and evaluate(alpha, cert.terms) != beta:
        raise InternalInconsistency("brute force certificate does not verify")
    return cert, True


def brute_force_certificate(
    field: NumberField, alpha: FieldElem | None, beta: FieldElem, K: int, A: int, node_limit: int | None = None
) -> Certificate | None:
    """A certificate with indices <= K and coefficients <= A, or None.

    None is inconclusive: it never proves non-membership.
    """
    alpha = field.alpha() if alpha is None else alpha
    return brute_force_search(field, alpha, beta, K, A, node_limit)[0]


def search_certificate(
    field: NumberField, alpha: FieldElem, beta: FieldElem, node_limit: int = 200_000
) -> Certificate | None:
    """Escalating bounded search used for on-demand certificates."""
    n = field.degree
    for K, A in ((n, 8), (n + 2, 8), (n + 3, 16), (8, 64)):
        cert, _ = brute_force_search(field, alpha, beta, K, A, node_limit)
        if cert is not None:
            return cert
    return None


def random_member(
    field: NumberField, alpha: FieldElem | None, seed: int, size: int, coeff_bound: int = 5
) -> tuple[FieldElem, Certificate]:
    alpha = field.alpha() if alpha is None else alpha
    rng = random.Random(seed)
    coeffs = [rng.randint(0, coeff_bound) for _ in range(size + 1)]
    terms = tuple((k, a) for k, a in enumerate(coeffs) if a)
    value = evaluate(alpha, terms)
    return value, Certificate(value, terms)


# --- constructive certificates for Q(sqrt d) ---------------------------------


def _quadratic_setup(d: int) -> tuple[NumberField, CertAlgebra]:
    if d in (0, 1) or squarefree_part(d) != d:
        raise PreconditionError(f"{d} is not a squarefree integer other than 0, 1")
    field = field_from_min_poly([-d, 0, 1], trusted=True)
    return field, CertAlgebra(field.alpha())


def _parts(x: FieldElem) -> tuple[Fraction, Fraction]:
    return x.coords[0], x.coords[1]


def quadratic_neg_one(d: int) -> Certificate:
    field, alg = _quadratic_setup(d)
    root = field.alpha()
    if d < 0:
        # d = sqrt(d)^2 = sqrt(d) + 2 binom(sqrt(d), 2), then add -d - 1
        cert = alg.add(alg.basis(1), alg.basis(2, 2), alg.basis(0, -d - 1))
        return alg.checked(cert, -1)
    n = isqrt(d)
    u = binomial_values(root, n + 2)[-1]  # negative, as sqrt(d) - n - 1 is the only negative factor
    M = lcm(*(c.denominator for c in u.coords))
    cert_u = alg.basis(n + 2, M)
    c, e = _parts(cert_u.target)
    options = []
    if e <= 0:
        options.append(alg.add(cert_u, alg.basis(1, int(-2 * e))))  # conjugate c - e sqrt(d)
    if c <= 0:
        options.append(alg.add(cert_u, alg.basis(0, int(-2 * c))))  # minus the conjugate
    for other in options:
        prod = alg.mul(cert_u, other)
        if prod.target.is_rational() and prod.target.rational() < 0:
            P = int(prod.target.rational())
            return alg.checked(alg.add(prod, alg.basis(0, -P - 1)), -1)
    raise InternalInconsistency(f"no negative norm product found for d={d}")


def _isolate_inverse(alg: CertAlgebra, cert: Certificate, p: int) -> Certificate:
    """From a certificate for u/p with p not dividing u, build one for 1/p."""
    val = cert.target.rational()
    u = val.numerator
    if val.denominator != p or u % p == 0:
        raise InternalInconsistency(f"expected u/{p}, got {val}")
    inv = pow(u, -1, p)
    j = (u * inv - 1) // p
    return alg.add_int(alg.scale(cert, inv), -j)


def inverse_prime_certificate(d: int, p: int, neg_one: Certificate | None = None) -> Certificate:
    """Certificate for 1/p in R+(sqrt d); p must not split."""
    if quadratic_profile(d, p) == "split":
        raise PreconditionError(f"{p} splits in Q(sqrt {d}); 1/p is not in R+(sqrt {d})")
    field, alg = _quadratic_setup(d)
    alg.neg_one = quadratic_neg_one(d) if neg_one is None else neg_one
    target = field.from_rational(Fraction(1, p))
    if p == 2:
        lower = alg.basis(2)  # (d - sqrt d)/2
        if d % 4 in (2, 3):
            upper = alg.add(lower, alg.basis(1))  # (d + sqrt d)/2
            half = alg.mul(lower, upper)  # (d^2 - d)/4
        else:
            # d = 5 mod 8: binom((d - sqrt d)/2, 2) + ((d-1)/4) sqrt d = (d^2 - d)/8
            y = alg.binom(lower, 2)
            half = alg.add(y, alg.scale(alg.basis(1), (d - 1) // 4))
        return alg.checked(_isolate_inverse(alg, half, 2), target)
    # (p-1)! binom(sqrt d, p) = prod_{i<p} (sqrt d - i) / p, then multiply by the
    # conjugate-like factors sqrt d + i so every factor becomes a rational norm
    cert = alg.basis(p, factorial(p - 1))
    start = 1 if d % p == 0 else 0
    for i in range(start, p):
        cert = alg.mul(cert, alg.add(alg.basis(1), alg.basis(0, i)))
    if d % p == 0:
        cert = alg.mul(cert, cert)  # k sqrt(d)/p squared is k^2 (d/p)/p
    return alg.checked(_isolate_inverse(alg, cert, p), target)


def quadratic_certificates(d: int, prime_bound: int = 13) -> dict:
    neg = quadratic_neg_one(d)
    inverses = {}
    for p in sympy.primerange(2, prime_bound + 1):
        if quadratic_profile(d, p) != "split":
            inverses[p] = inverse_prime_certificate(d, p, neg)
    return {"neg_one": neg, "inverse_primes": inverses}
