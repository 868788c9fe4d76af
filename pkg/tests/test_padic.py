import random

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from sympy import legendre_symbol, primerange

from oracles import enumerated_roots, legendre_split, random_squarefree_monic
from rplus import PrecisionCapExceeded, PreconditionError, field_from_min_poly
from rplus.padic import (
    INF,
    PadicApprox,
    max_poly_valuation,
    place_valuation,
    places,
    refine_root,
    zp_roots,
)
from rplus.numfield import discriminant
from rplus.poly import RatPoly, vp_int

Q2 = field_from_min_poly([-2, 0, 1])


def ev(g, a):
    return sum(c * a**i for i, c in enumerate(g))


class TestZpRoots:
    def test_sqrt2_at_7(self):
        roots = zp_roots(7, [-2, 0, 1])
        assert sorted(r.approx % 7 for r in roots) == [3, 4]

    def test_no_sqrt3_at_5(self):
        assert zp_roots(5, [-3, 0, 1]) == []

    def test_sqrt17_at_2(self):
        assert len(zp_roots(2, [-17, 0, 1])) == 2

    def test_integer_root(self):
        (r,) = zp_roots(3, [-5, 1])
        assert r.approx_mod(5) == 5
        assert refine_root(r, 40).precision == INF

    @pytest.mark.parametrize("g", [[1, 0, 1, 0], [-2, 0, 2], [-1, 0, 0]])
    def test_preconditions(self, g):
        with pytest.raises(PreconditionError):
            zp_roots(3, g)

    def test_rejects_composite_prime(self):
        with pytest.raises(PreconditionError):
            zp_roots(9, [-2, 0, 1])

    def test_cap_is_a_hard_error(self, monkeypatch):
        monkeypatch.setenv("RPLUS_PRECISION_CAP", "1")
        with pytest.raises(PrecisionCapExceeded):
            zp_roots(2, [-17, 0, 1])

    def test_hensel_margin(self):
        for p in (2, 3, 7):
            for r in zp_roots(p, [-17, 0, 1]):
                vg, vd = r.hensel_margin
                assert vg > 2 * vd
                assert r.precision == vg - vd

    @pytest.mark.parametrize("seed", range(40))
    def test_matches_enumeration(self, seed):
        rng = random.Random(seed)
        g = random_squarefree_monic(rng)
        for p in (2, 3, 5, 7):
            found, resolved = enumerated_roots(p, g)
            roots = zp_roots(p, g)
            # v_p(g'(z)) equals the margin's second entry
            ours = {(r.approx_mod(12 - e), 12 - e) for r in roots if 2 * (e := r.hensel_margin[1]) < 12}
            assert ours == found
            if resolved:
                assert len(roots) == len(found)

    @given(st.integers(-60, 60), st.sampled_from(list(primerange(2, 30))))
    def test_quadratic_split_law(self, d, p):
        assume(d not in (0, 1))
        assume(all(d % (q * q) for q in primerange(2, 9)))
        n = len(zp_roots(p, [-d, 0, 1]))
        assert n in (0, 2) or d % p == 0
        if d % p:
            assert (n == 2) == legendre_split(d, p)

    @given(st.sampled_from([[-2, 0, 1], [1, 1, 1], [-1, -1, 0, 1], [3, 0, 0, 0, 1], [-6, 11, -6, 1]]))
    def test_unramified_count_equals_mod_p(self, g):
        disc = discriminant(RatPoly(g))
        for p in primerange(2, 40):
            if disc.numerator % p:
                assert len(zp_roots(p, g)) == sum(1 for a in range(p) if ev(g, a) % p == 0)


class TestRefine:
    def test_sqrt2_to_7_4(self):
        r = next(r for r in zp_roots(7, [-2, 0, 1]) if r.approx % 7 == 3)
        a = refine_root(r, 4).approx % 7**4
        assert (a * a - 2) % 7**4 == 0

    def test_idempotent(self):
        r = zp_roots(7, [-2, 0, 1])[0]
        r10 = refine_root(r, 10)
        assert refine_root(r10, 3) is r10
        assert r10.approx_mod(3) == r.approx_mod(3)


class TestPadicApprox:
    def test_precision_tracking(self):
        a = PadicApprox(5, 10, 4)
        b = PadicApprox(5, 3, 2)
        assert (a + b).precision == 2
        assert (a * a).precision == 5
        assert a.valuation() == 1
        assert PadicApprox(5, 0, 3).valuation() is None


class TestPlaceValuation:
    def test_rational(self):
        pl = places(Q2, 7)[0]
        assert place_valuation(pl, Q2.from_rational(7)) == 1
        assert place_valuation(pl, Q2.zero()) == INF

    def test_sqrt2_minus_3(self):
        pl = next(pl for pl in places(Q2, 7) if pl.root.approx % 7 == 3)
        z = pl.root.approx_mod(6)
        expected = vp_int(7, (z - 3) % 7**6)
        v = place_valuation(pl, Q2.theta() - 3)
        assert v >= 1
        assert v == expected

    def test_alpha_valuation_of_half(self):
        F = field_from_min_poly([-1, 2])
        (pl,) = places(F, 2)
        assert pl.alpha_val == -1
        assert pl.to_json() == {"p": 2, "root_mod": "1", "precision": "exact", "v_alpha": "-1"}

    coords = st.fractions(min_value=-50, max_value=50, max_denominator=30)

    @settings(max_examples=50, deadline=None)
    @given(st.lists(coords, min_size=2, max_size=2), st.lists(coords, min_size=2, max_size=2), st.sampled_from([2, 7, 17]))
    def test_additive_and_schedule_free(self, a, b, p):
        a, b = Q2.elem(a), Q2.elem(b)
        assume(not a.is_zero() and not b.is_zero())
        for pl in places(Q2, p):
            va = place_valuation(pl, a)
            assert va == place_valuation(pl, a, start_precision=32)
            assert place_valuation(pl, a * b) == va + place_valuation(pl, b)


class TestMaxPolyValuation:
    @pytest.mark.parametrize("p, g, v", [(5, [-3, 0, 1], 0), (2, [-5, 0, 1], 2), (7, [1, 0, 1], 0)])
    def test_examples(self, p, g, v):
        assert max_poly_valuation(p, g) == v

    @pytest.mark.parametrize("g", [[-5, 0, 1], [-3, 0, 1], [2, 0, 1], [7, 3, 1], [-2, 0, 0, 1], [6, 0, 3, 0, 1]])
    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_against_enumeration(self, g, p):
        if zp_roots(p, g):
            return
        depth = 10 if p == 2 else 6
        brute = max(min(vp_int(p, ev(g, a)), depth) for a in range(p**depth))
        assert max_poly_valuation(p, g) == brute


@pytest.mark.parametrize("d", [-5, -1, 2, 3, 5, 6, 17])
def test_legendre_table(d):
    for p in primerange(3, 60):
        if d % p:
            assert (len(zp_roots(p, [-d, 0, 1])) == 2) == (legendre_symbol(d % p, p) == 1)
