import itertools
import math
from fractions import Fraction as F

import pytest

from persist_ma1.combinatorics import (
    Profile, comb_pn_blue, comb_pn_dual, comb_pn_green, comb_table, enumerate_profiles, mallows_J,
    mallows_ratio_coeffs, monomial_count, phi, phi_value, profile_count, square_sum_count,
)
from persist_ma1.errors import DomainError
from persist_ma1.model import Params
from persist_ma1.oracles import dp_exact_table
from persist_ma1.poly import Poly
from persist_ma1.region_formulas import blue_gf, green_gf, grey_pn, persistence_series

T = Poly.gen()


def P(a, t):
    return Params(F(a), F(t))


def test_profiles_of_four():
    rs = [p.r for p in enumerate_profiles(4)]
    assert rs == [(4, 0, 0, 0), (2, 1, 0, 0), (1, 0, 1, 0), (0, 2, 0, 0), (0, 0, 0, 1)]


def test_profile_validation():
    with pytest.raises(ValueError):
        Profile(3, (1, 1, 1))


@pytest.mark.parametrize("ell", range(1, 7))
def test_profile_count_matches_enumeration(ell):
    for k in range(1, 7):
        counts = {}
        for vec in itertools.product(range(ell + 1), repeat=k):
            if sum(vec) != ell:
                continue
            r = tuple(vec.count(i) for i in range(1, ell + 1))
            counts[r] = counts.get(r, 0) + 1
        for p in enumerate_profiles(ell):
            assert profile_count(k, p) == counts.get(p.r, 0)


def test_phi_low_orders():
    assert phi(0).poly == 1
    assert phi(1).poly == -1
    assert phi(3).poly == -1 + T - T**3 / 6


def test_monomial_counts_match_square_sums():
    assert [monomial_count(ell) for ell in range(12)] == [square_sum_count(ell) for ell in range(12)]


@pytest.mark.parametrize("ell", range(1, 11))
def test_top_monomial(ell):
    top = phi(ell).poly * (-1) ** ell
    assert top.degree == ell * (ell - 1) // 2
    assert top.leading == F((-1) ** (ell + 1), math.factorial(ell))


def test_mallows_low_orders():
    assert mallows_J(4).poly == 6 + 6 * T + 3 * T**2 + T**3
    # J_n(1) counts labelled trees: n^(n-2)
    assert [mallows_J(n).poly(1) for n in range(1, 8)] == [n ** (n - 2) if n > 1 else 1 for n in range(1, 8)]


@pytest.mark.parametrize("t", [F(1, 3), F(-2, 5), F(3, 2)])
def test_mallows_ratio_cross_check(t):
    coeffs = mallows_ratio_coeffs(t, 9)
    assert all(coeffs[n] == mallows_J(n + 1).poly(t) / math.factorial(n) for n in range(10))


def test_mallows_as_probability_for_negative_theta():
    # a = -theta > 0 sits on the blue boundary when theta < 0
    for t in (F(-1, 4), F(-1, 2), F(-3, 4)):
        p = dp_exact_table(Params(-t, t), 7)
        assert all(p[n] * math.factorial(n + 1) == mallows_J(n + 2).poly(t) for n in range(8))


def test_mallows_example_at_half():
    assert mallows_J(4).poly(F(1, 2)) / 6 == blue_gf(P("-1/2", "1/2"), 2, check_region=False)[2]


class TestCombinatorialPn:
    def test_blue(self):
        assert comb_pn_blue(P(0, "1/2"), 2) == F(25, 48)
        assert comb_pn_blue(P(1, "1/2"), 1) == F(1, 2)
        assert comb_pn_blue(P(0, 0), 7) == 1
        assert [comb_pn_blue(P(2, "-1/2"), n) for n in range(7)] == list(blue_gf(P(2, "-1/2"), 6))

    def test_green(self):
        assert comb_pn_green(P(2, "-1/2"), 1) == F(1, 4)
        assert [comb_pn_green(P(3, "-1/2"), n) for n in range(7)] == list(green_gf(P(3, "-1/2"), 6))
        with pytest.raises(DomainError):
            comb_pn_green(P(2, 0), 1)

    @pytest.mark.parametrize("a, t", [("1", "2"), ("2", "-3")])
    def test_dual(self, a, t):
        assert [comb_pn_dual(P(a, t), n) for n in range(7)] == list(persistence_series(P(a, t), 6).values)

    def test_dual_grey_boundary(self):
        assert comb_pn_dual(P(0, 2), 3) == grey_pn(P(0, 2), 3) == F(1, 1536)

    def test_dual_domain(self):
        with pytest.raises(DomainError):
            comb_pn_dual(P("1/2", "1/2"), 1)

    def test_table_falls_back_to_error(self):
        with pytest.raises(DomainError):
            comb_table(P("1/4", "-1/2"), 3)

    def test_phi_value(self):
        assert phi_value(3, F(1, 2)) == F(-25, 48)
