import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rplus import PreconditionError, field_from_min_poly
from rplus.certificates import CertAlgebra, Certificate, binomial_values, evaluate, verify_certificate
from rplus.negone import (
    certify_negative_one,
    construct_multiplier,
    find_positive_multiplier,
    has_nonnegative_integer_root,
)
from rplus.poly import RatPoly, to_binomial_basis
from rplus.rplus_poly import PnkTable

X = RatPoly.x()

MIN_POLYS = {
    "half": [-1, 2],
    "sqrt2": [-2, 0, 1],
    "i": [1, 0, 1],
    "golden": [-1, -1, 1],
    "plastic": [-1, -1, 0, 1],
    "cbrt2": [-2, 0, 0, 1],
    "minus_two_thirds": [2, 3],
}


def assert_positive_multiplier(p, s):
    r = to_binomial_basis(p * s).coeffs
    assert r[0] > 0
    assert all(c >= 0 and c.denominator == 1 for c in r)


class TestMultiplier:
    @pytest.mark.parametrize("p", [X - Fraction(1, 2), X**2 - 2, X**2 + 1, X**2 - X - 1, X**3 - X - 1, X + 3])
    def test_examples(self, p):
        s = find_positive_multiplier(p)
        assert_positive_multiplier(p, s)

    def test_root_of_sqrt2_multiple(self):
        F = field_from_min_poly([-2, 0, 1])
        r = (X**2 - 2) * find_positive_multiplier(X**2 - 2)
        acc = F.zero()
        for c in reversed(r.coeffs):
            acc = acc * F.theta() + c
        assert acc.is_zero()

    @pytest.mark.parametrize("p", [X - Fraction(1, 2), X**2 - 2, X**2 + 1, X**2 - X - 1, X + 3, 2 * X**2 + X + 1])
    def test_threshold_construction_alone(self, p):
        s = find_positive_multiplier(p, prepass=False)
        assert_positive_multiplier(p, s)

    @pytest.mark.parametrize("p", [X**2 - 2, X**2 + 1, X - Fraction(1, 2), X**3 - X - 1])
    def test_state_and_tail_nonnegativity(self, p):
        P = p.primitive()
        _, state = construct_multiplier(P)
        assert state.N >= 2 * state.t
        assert state.q.degree <= state.N + 2
        table = PnkTable(P)
        for n in range(state.N, state.N + 12):
            for k in range(state.calK + 1):
                assert table.entry(n, k) >= 0

    @pytest.mark.parametrize("p", [X, X - 3, (X - 2) * (X**2 + 1), RatPoly()])
    def test_rejects_nonnegative_integer_roots(self, p):
        with pytest.raises(PreconditionError):
            find_positive_multiplier(p)

    def test_integer_root_detection(self):
        assert has_nonnegative_integer_root((X - 4) * (X + 1))
        assert not has_nonnegative_integer_root((X + 4) * (X**2 - 2))

    @settings(max_examples=25, deadline=None)
    @given(st.lists(st.integers(-6, 6), min_size=2, max_size=4))
    def test_random_polynomials(self, cs):
        p = RatPoly(cs)
        if p.degree < 1 or has_nonnegative_integer_root(p):
            return
        assert_positive_multiplier(p, find_positive_multiplier(p))


class TestNegativeOne:
    @pytest.mark.parametrize("name", sorted(MIN_POLYS))
    def test_certificate_verifies(self, name):
        F = field_from_min_poly(MIN_POLYS[name])
        cert = certify_negative_one(F)
        assert cert.target == -1
        assert verify_certificate(F, cert)

    def test_half_has_small_certificate(self):
        F = field_from_min_poly([-1, 2])
        assert certify_negative_one(F).terms == ((2, 8),)

    def test_negative_integer(self):
        F = field_from_min_poly([1, 1])
        assert certify_negative_one(F).terms == ((1, 1),)
        F = field_from_min_poly([5, 1])
        assert certify_negative_one(F).terms == ((0, 4), (1, 1))

    @pytest.mark.parametrize("m", [[0, 1], [-3, 1]])
    def test_nonnegative_integer_alpha(self, m):
        with pytest.raises(PreconditionError):
            certify_negative_one(field_from_min_poly(m))

    @pytest.mark.parametrize("name", ["sqrt2", "golden", "cbrt2"])
    def test_closure_certifies_integer_combinations(self, name):
        F = field_from_min_poly(MIN_POLYS[name])
        alg = CertAlgebra(F.alpha(), certify_negative_one(F))
        a = alg.basis(1)
        cert = alg.add(alg.scale(a, -3), alg.mul(a, a), alg.integer(-7))
        expected = F.alpha() * F.alpha() - 3 * F.alpha() - 7
        assert cert.target == expected
        assert verify_certificate(F, cert)


class TestVerify:
    def test_known_certificates(self):
        half = field_from_min_poly([-1, 2])
        assert verify_certificate(half, Certificate(half.from_rational(-1), ((2, 8),)))
        Q2 = field_from_min_poly([-2, 0, 1])
        assert verify_certificate(Q2, Certificate(2 - Q2.theta(), ((2, 2),)))
        for F in (half, Q2):
            assert verify_certificate(F, Certificate(F.one(), ((0, 1),)))

    def test_rejects_wrong_target(self):
        Q2 = field_from_min_poly([-2, 0, 1])
        assert not verify_certificate(Q2, Certificate(Q2.theta(), ((2, 2),)))

    def test_rejects_negative_terms(self):
        Q2 = field_from_min_poly([-2, 0, 1])
        with pytest.raises(PreconditionError):
            Certificate(Q2.one(), ((0, -1),))

    def test_json_roundtrip(self):
        Q2 = field_from_min_poly([-2, 0, 1])
        cert = certify_negative_one(Q2)
        data = json.loads(json.dumps(cert.to_json()))
        assert Certificate.from_json(Q2, data) == cert

    def test_binomial_values(self):
        half = field_from_min_poly([-1, 2])
        assert binomial_values(half.alpha(), 2)[2] == Fraction(-1, 8)
        assert evaluate(half.alpha(), ()) == 0
