"""Acceptance criteria, one test each, with a PASS/FAIL line per criterion.

Run alone with ``pytest tests/test_acceptance.py -v -s`` or as a script.
The lines are also repeated in the pytest terminal summary.
"""

import random
import time
from fractions import Fraction
from math import comb, factorial, prod

import pytest
import sympy
from sympy import primerange

from oracles import enumerated_roots, legendre_split, random_squarefree_monic
from rplus import field_from_min_poly
from rplus.certificates import verify_certificate
from rplus.membership import (
    ValuationWitness,
    cyclotomic_inverse_prime,
    decide_membership,
    generator_presentation,
    inverse_prime_in,
    verify_witness,
)
from rplus.negone import certify_negative_one
from rplus.numfield import binom_elem, discriminant, norm
from rplus.oracle import brute_force_search, random_member
from rplus.padic import place_valuation, places, zp_roots
from rplus.poly import RatPoly, parse_poly, vp_rat
from rplus.rplus_poly import PnkTable, RPlusPoly, binom_of_poly, pnk_det

RESULTS: dict[int, str] = {}


def report(n, title, ok, elapsed, limit, detail=""):
    within = elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    line = f"[AC{n:02d}] {status} {title} ({elapsed:.2f}s / {limit}s)"
    if detail:
        line += f" {detail}"
    RESULTS[n] = line
    print(line)
    return ok and within


def timed(fn):
    start = time.perf_counter()
    ok, detail = fn()
    return ok, time.perf_counter() - start, detail


# 1 ------------------------------------------------------------------------


def criterion_rational_law():
    rng = random.Random(20240601)
    failures = 0
    for a in (Fraction(1, 2), Fraction(2, 3), Fraction(-3, 5), Fraction(7, 4)):
        F = field_from_min_poly([-a.numerator, a.denominator])
        q = a.denominator
        for _ in range(200):
            beta = Fraction(rng.randint(-500, 500), rng.choice([1, 2, 3, 4, 5, 6, 8, 9, 12, 16, 25, 27, 7, 49]))
            expected = all(q % p == 0 for p in sympy.factorint(beta.denominator))
            if decide_membership(F, None, F.from_rational(beta)).member != expected:
                failures += 1
    return failures == 0, f"mismatches={failures}"


def test_ac01_rational_law():
    ok, t, detail = timed(criterion_rational_law)
    assert report(1, "rational law on 4 alphas x 200 betas", ok, t, 5, detail)


# 2 ------------------------------------------------------------------------


def criterion_quadratic():
    bad = []
    for d in (-5, -1, 2, 3, 5, 6, 17):
        F = field_from_min_poly([-d, 0, 1])
        for p in primerange(2, 200):
            if p == 2:
                rule = d % 8 != 1
            else:
                rule = sympy.legendre_symbol(d % p, p) != 1 if d % p else True
            if inverse_prime_in(F, None, p) != rule:
                bad.append((d, p))
    return not bad, f"mismatches={bad[:5]}"


def test_ac02_quadratic_characterization():
    ok, t, detail = timed(criterion_quadratic)
    assert report(2, "quadratic inverse-prime rule, p < 200", ok, t, 30, detail)


# 3 ------------------------------------------------------------------------


def criterion_cyclotomic():
    x = sympy.Symbol("x")
    bad = []
    for n in (3, 4, 5, 8, 12):
        phi = [int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs())]
        F = field_from_min_poly(phi)
        for p in primerange(2, 100):
            rule = cyclotomic_inverse_prime(n, p)
            general = inverse_prime_in(F, None, p)
            if not (rule == general == (p % n != 1)):
                bad.append((n, p))
    return not bad, f"mismatches={bad[:5]}"


def test_ac03_cyclotomic_rule():
    ok, t, detail = timed(criterion_cyclotomic)
    assert report(3, "cyclotomic rule vs valuation path, p < 100", ok, t, 60, detail)


# 4 ------------------------------------------------------------------------

NEG_ONE_POLYS = ["2x-1", "x^2-2", "x^2-x-1", "x^2+1", "x^3-x-1"]


def criterion_negative_one():
    sizes, slowest = [], 0.0
    for text in NEG_ONE_POLYS:
        start = time.perf_counter()
        F = field_from_min_poly(parse_poly(text))
        cert = certify_negative_one(F)
        elapsed = time.perf_counter() - start
        slowest = max(slowest, elapsed)
        if cert.target != -1 or not verify_certificate(F, cert) or elapsed >= 60:
            return False, f"{text} failed"
        sizes.append(cert.size)
    return True, f"sizes={sizes}, slowest single {slowest:.2f}s"


def test_ac04_negative_one_certificates():
    ok, t, detail = timed(criterion_negative_one)
    assert report(4, "-1 certificates for 5 minimal polynomials", ok, t, 300, detail)


# 5 ------------------------------------------------------------------------


def criterion_binom_of_poly():
    rng = random.Random(5)
    for _ in range(100):
        f = RPlusPoly([rng.randint(0, 3) for _ in range(rng.randint(1, 5))])
        fp = f.to_poly()
        for k in range(6):
            g = binom_of_poly(f, k)
            if any(not isinstance(c, int) or c < 0 for c in g.coeffs):
                return False, "negative coefficient"
            if any(g.value_at(n) != comb(int(fp(n)), k) for n in range(8)):
                return False, "wrong expansion"
    return True, "100 polynomials, k <= 5"


def test_ac05_binomial_of_rplus_is_rplus():
    ok, t, detail = timed(criterion_binom_of_poly)
    assert report(5, "binom(f, k) stays in R+(x)", ok, t, 10, detail)


# 6 ------------------------------------------------------------------------


def criterion_tables():
    rng = random.Random(6)
    dets = 0
    for _ in range(25):
        p = RatPoly([rng.randint(-10, 10) for _ in range(rng.randint(1, 5))])
        N, K = rng.randint(0, 8), rng.randint(0, 10)
        t = PnkTable(p)
        for n in range(N + 1):
            for k in range(K + 1):
                if t.entry(n, k) != t.entry_via_delta(n, k):
                    return False, f"closed form differs at {p}, ({n},{k})"
                if n >= 1 and k >= 1 and t.entry(n, k) != n * (t.entry(n, k - 1) + t.entry(n - 1, k - 1)):
                    return False, f"recurrence fails at {p}, ({n},{k})"
        if all(p(n) != 0 for n in range(N + 1)):
            dets += 1
            if pnk_det(p, N) != prod(p(n) * factorial(n) for n in range(N + 1)):
                return False, f"determinant differs for {p}, N={N}"
    return True, f"25 tables, {dets} determinants"


def test_ac06_table_identities():
    ok, t, detail = timed(criterion_tables)
    assert report(6, "p_nk closed form, recurrence, determinant", ok, t, 10, detail)


# 7 ------------------------------------------------------------------------


def criterion_zp_roots():
    rng = random.Random(7)
    unresolved = 0
    for _ in range(200):
        g = random_squarefree_monic(rng)
        for p in (2, 3, 5, 7):
            found, resolved = enumerated_roots(p, g)
            roots = zp_roots(p, g)
            ours = {(r.approx_mod(12 - e), 12 - e) for r in roots if 2 * (e := r.hensel_margin[1]) < 12}
            if ours != found:
                return False, f"mismatch for {g} at {p}"
            if resolved and len(roots) != len(found):
                return False, f"count mismatch for {g} at {p}"
            unresolved += not resolved
    for d in (-7, -5, -3, -2, -1, 2, 3, 5, 6, 7, 10, 11, 13, 15, 17, 21, 33, 41):
        for p in primerange(2, 40):
            if d % p and (len(zp_roots(p, [-d, 0, 1])) == 2) != legendre_split(d, p):
                return False, f"split count wrong for d={d}, p={p}"
    return True, f"800 cases, {unresolved} unresolved at depth 12"


def test_ac07_padic_engine():
    ok, t, detail = timed(criterion_zp_roots)
    assert report(7, "zp_roots vs mod p^12 enumeration", ok, t, 60, detail)


# 8 ------------------------------------------------------------------------


def criterion_oracle_sqrt2():
    F = field_from_min_poly([-2, 0, 1])
    alpha = F.alpha()
    for seed in range(30):
        value, _ = random_member(F, None, seed, 6)
        if not decide_membership(F, None, value).member:
            return False, f"random member {value} rejected"
    rng = random.Random(8)
    made = 0
    while made < 30:
        a, b = rng.randint(-60, 60), rng.randint(-60, 60)
        if a % 7 == 0 and b % 7 == 0:
            continue
        made += 1
        beta = F.elem([Fraction(a, 7), Fraction(b, 7)])
        v = decide_membership(F, None, beta)
        if v.member or not isinstance(v.witness, ValuationWitness):
            return False, f"{beta} not rejected with a witness"
        if not verify_witness(F, alpha, beta, v.witness, start_precision=16):
            return False, f"witness for {beta} does not re-verify"
        cert, complete = brute_force_search(F, alpha, beta, 8, 64)
        if cert is not None or not complete:
            return False, f"brute force disagrees on {beta}"
    return True, "30 members, 30 non-members"


def test_ac08_oracle_cross_validation():
    ok, t, detail = timed(criterion_oracle_sqrt2)
    assert report(8, "oracle cross-validation on Q(sqrt 2)", ok, t, 120, detail)


# 9 ------------------------------------------------------------------------


def criterion_generators():
    checked = nonlinear = 0
    for m in ([-2, 0, 1], [-17, 0, 1], [-2, 0, 0, 1]):
        F = field_from_min_poly(m)
        for g in generator_presentation(F, None, 13):
            checked += 1
            if not decide_membership(F, None, g.element).member:
                return False, f"alpha_{g.p} of {m} is not a member"
            if any(place_valuation(pl, g.element) != 0 for pl in places(F, g.p)):
                return False, f"alpha_{g.p} of {m} has nonzero valuation"
            if g.has_nonlinear:
                nonlinear += 1
                if vp_rat(g.p, norm(F, g.element)) >= 0:
                    return False, f"alpha_{g.p} of {m} has integral norm"
        if m == [-2, 0, 0, 1] and not next(g for g in generator_presentation(F, None, 5) if g.p == 5).has_nonlinear:
            return False, "x^3-2 at 5 should have a nonlinear residual"
    return True, f"{checked} generators, {nonlinear} with nonlinear residuals"


def test_ac09_generators():
    ok, t, detail = timed(criterion_generators)
    assert report(9, "generators alpha_p, p <= 13", ok, t, 120, detail)


# 10 -----------------------------------------------------------------------


def catalan(n):
    return comb(2 * n, n) // (n + 1)


def criterion_explicit_values():
    half = field_from_min_poly([-1, 2]).alpha()
    failures = []
    if binom_elem(half, 2) != Fraction(-1, 8):
        failures.append("binom(1/2,2)")
    # stated closed form, checked literally
    bad_k = [k for k in range(1, 9) if binom_elem(half, k) != Fraction(catalan(k - 1) * (-1) ** (k - 1), 2**k)]
    if bad_k:
        failures.append(f"Catalan/2^k fails for k={bad_k}")
    x = RatPoly.x()
    for n in range(1, 11):
        if discriminant(x**n - 1) != n**n * (-1) ** (n * (n + 1) // 2 + 1):
            failures.append(f"disc(x^{n}-1)")
    return not failures, "; ".join(failures)


@pytest.mark.xfail(strict=True, reason="the stated Catalan closed form is off by 2^(k-1); see README")
def test_ac10_explicit_values():
    ok, t, detail = timed(criterion_explicit_values)
    assert report(10, "explicit values", ok, t, 5, detail)


def test_binom_half_corrected_closed_form():
    # not an acceptance criterion: the identity that does hold
    half = field_from_min_poly([-1, 2]).alpha()
    for k in range(1, 30):
        assert binom_elem(half, k) == Fraction(catalan(k - 1) * (-1) ** (k - 1), 2 ** (2 * k - 1))


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
