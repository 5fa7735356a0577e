"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line (shown in the pytest terminal summary) and
asserts.  Exact criteria use Fraction equality; runtime budgets are checked
with ``time.perf_counter``.
"""

import math
import time
from fractions import Fraction as F

import pytest

from persist_ma1.cli import verification_paths
from persist_ma1.combinatorics import mallows_J, monomial_count, phi
from persist_ma1.dualities import dual_neg, dual_pos, hidden_duality_residual, moebius_flip
from persist_ma1.exponents import ExponentKind, find_exponent
from persist_ma1.model import Params
from persist_ma1.oracles import dp_exact_pn, dp_exact_table, mc_estimate
from persist_ma1.phase_map import Region
from persist_ma1.poly import Poly
from persist_ma1.region_formulas import (
    blue_gf, grey_table, orange_gf, persistence_series, region_table,
)
from persist_ma1.series import Series, deformed_exp_series, mul

THETA = Poly.gen()


def _p(a, theta) -> Params:
    return Params(F(a), F(theta))


# -- 1 --------------------------------------------------------------------------------

def test_criterion_1_theta_one_law(acceptance_log):
    start = time.perf_counter()
    failures = []
    n_paths = 0
    for a in ("0", "1/2", "1", "3", "-1/2"):
        params = _p(a, 1)
        expected = [F(1, math.factorial(n + 1)) for n in range(11)]
        paths = verification_paths(params, 10)
        paths["dp_exact"] = dp_exact_table(params, 10)
        n_paths += len(paths)
        failures += [(a, name) for name, vals in paths.items() if list(vals) != expected]
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 1.0
    acceptance_log("1", ok, f"theta=1 gives 1/(n+1)! on {n_paths} paths, n<=10; mismatches={failures}", elapsed)
    assert ok


# -- 2 --------------------------------------------------------------------------------

def _criterion_2_grid():
    for a in ("0", "1/2", "1", "2"):
        for t in ("0", "1/4", "1/2", "3/4", "1"):
            yield Region.BLUE, _p(a, t)
    for t in (F(-1, 2), F(-1)):
        for a in (2, 3, 5):
            if a >= -1 / t:
                yield Region.GREEN, _p(a, t)
        for a in (F(0), F(1, 4), F(1, 2)):
            if a <= -t:
                yield Region.YELLOW, _p(a, t)
    for t in (F(1, 2), F(3, 4)):
        for a in (F(-1, 4), F(-1, 2)):
            if a >= -t:
                yield Region.ORANGE, _p(a, t)
    for t, a in (("3/2", "-1/2"), ("2", "-1/4"), ("2", "0")):
        yield Region.GREY, _p(a, t)


def test_criterion_2_region_oracle_equivalence(acceptance_log):
    start = time.perf_counter()
    grid = list(_criterion_2_grid())
    failures = [(r.value, str(p)) for r, p in grid if region_table(p, r, 8) != dp_exact_table(p, 8)]
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 60.0
    acceptance_log("2", ok, f"{len(grid)} grid points, formula == DP for n<=8; mismatches={failures}", elapsed)
    assert ok


# -- 3 --------------------------------------------------------------------------------

CRITERION_3 = [
    ("1/4", "-1/2", 1, F(91, 100)),
    ("-1/4", "1/2", 1, F(8, 9)),
    ("-1/4", "2", 1, F(1, 9)),
    ("-1/4", "2", 2, F(0)),
    ("2", "-1/2", 1, F(1, 4)),
]


def test_criterion_3_specific_values(acceptance_log):
    start = time.perf_counter()
    rows = []
    for a, t, n, expected in CRITERION_3:
        params = _p(a, t)
        oracle = dp_exact_pn(params, n)  # ground truth first
        formula = persistence_series(params, n)[n]
        rows.append((a, t, n, oracle == expected, formula == expected))
    elapsed = time.perf_counter() - start
    ok = all(o and f for *_, o, f in rows)
    acceptance_log("3", ok, "DP and formula reproduce 91/100, 8/9, 1/9, 0, 1/4 exactly"
                   if ok else f"rows={rows}", elapsed)
    assert ok


# -- 4 --------------------------------------------------------------------------------

def test_criterion_4_dualities(acceptance_log):
    start = time.perf_counter()
    failures = []
    for a, t in (("2", "3"), ("1/2", "5"), ("3", "-4"), ("1", "-2")):
        params = _p(a, t)
        target = dual_pos(params) if params.theta > 0 else dual_neg(params)
        lhs = dp_exact_table(params, 8)
        if lhs != list(persistence_series(target, 8).values) or lhs != dp_exact_table(target, 8):
            failures.append(("swap", a, t))
    for a, t in (("1", "2"), ("-1/4", "1/2")):
        p_theta = persistence_series(_p(a, t), 6)
        p_inv = persistence_series(_p(a, 1 / F(t)), 6)
        if any(hidden_duality_residual(p_theta, p_inv, n) != 0 for n in range(7)):
            failures.append(("hidden", a, t))
    flipped = moebius_flip(Series(grey_table(_p("-1/4", "2"), 8)))
    if flipped != orange_gf(_p("-1/4", "1/2"), 8):
        failures.append(("flip", "-1/4", "2"))
    elapsed = time.perf_counter() - start
    ok = not failures
    acceptance_log("4", ok, f"parameter swaps n<=8, hidden residual n<=6, grey->orange flip; failures={failures}",
                   elapsed)
    assert ok


# -- 5 --------------------------------------------------------------------------------

def _small_theta_mismatches(ells):
    bad = []
    for ell in ells:
        p = phi(ell).poly * (-1) ** ell
        want = [F(1), F(-(ell - 1), 2), F((ell - 2) * (ell - 3), 8)]
        if [p.coeff(k) for k in range(3)] != want:
            bad.append(ell)
    return bad


def test_criterion_5_combinatorics(acceptance_log):
    start = time.perf_counter()
    phis = Series([phi(ell).poly for ell in range(16)])
    convolution = mul(deformed_exp_series(THETA, 1, 15), phis) == Series.constant(1, 15)
    counts = [monomial_count(ell) for ell in range(10)] == [1, 1, 2, 3, 5, 7, 9, 13, 18, 21]
    at_one = all((-1) ** ell * phi(ell).poly(1) == F(1, math.factorial(ell)) for ell in range(13))
    # the linear and quadratic terms come from the (l-2, 1, ...) and (l-4, 2, ...) profiles
    expansion = not _small_theta_mismatches(range(2, 13))
    elapsed = time.perf_counter() - start
    ok = convolution and counts and at_one and expansion and elapsed < 30.0
    acceptance_log("5", ok, f"convolution={convolution} counts={counts} phi(1)={at_one} "
                   f"expansion(2<=l<=12)={expansion}", elapsed)
    assert ok


@pytest.mark.xfail(strict=True, reason="quadratic coefficient (l-2)(l-3)/8 is 1/4 at l=1, true value 0")
def test_criterion_5_expansion_full_range(acceptance_log):
    start = time.perf_counter()
    bad = _small_theta_mismatches(range(1, 13))
    acceptance_log("5-expansion-l>=1", not bad, f"small-theta coefficients for 1<=l<=12; mismatched l={bad}",
                   time.perf_counter() - start)
    assert not bad


# -- 6 --------------------------------------------------------------------------------

def test_criterion_6_mallows_riordan(acceptance_log):
    start = time.perf_counter()
    low = [mallows_J(n).poly for n in (1, 2, 3)] == [Poly.const(1), Poly.const(1), THETA + 2]
    failures = []
    for t in (F(1, 4), F(1, 2), F(3, 4)):
        # the blue generating function evaluated at a = -theta
        gf = blue_gf(Params(-t, t), 8, check_region=False)
        failures += [(t, n) for n in range(9) if gf[n] * math.factorial(n + 1) != mallows_J(n + 2).poly(t)]
    elapsed = time.perf_counter() - start
    ok = low and not failures
    acceptance_log("6", ok, f"J_1..J_3 ok={low}; blue formula at a=-theta, n<=8 mismatches={failures}", elapsed)
    assert ok


# -- 7 --------------------------------------------------------------------------------

def test_criterion_7_exponents(acceptance_log):
    start = time.perf_counter()
    notes = []
    r = find_exponent(_p("2", "0"))
    exact_third = r.kind is ExponentKind.ROOT_OF_E and r.bracket == (F(3), F(3)) and r.lam.contains(F(1, 3))
    notes.append(f"lambda(2,0)={r.lam.mid}")

    r = find_exponent(_p("-1/4", "1/2"))
    orange = abs(r.z0.mid - (9 - math.sqrt(45)) / 2) < 1e-9
    notes.append(f"z0(-1/4,1/2)={r.z0.mid}")

    ratios, constants = True, True
    for a, t in (("0", "1/2"), ("1", "1/2"), ("2", "-1/2")):
        params = _p(a, t)
        r = find_exponent(params)
        p = persistence_series(params, 41).values
        lam = r.lam.mid
        ratios &= abs(float(p[41] / p[40]) - lam) <= 1e-6 * lam
        if (a, t) != ("2", "-1/2"):
            err = abs(float(p[40]) / (r.constant * lam**42) - 1)
            constants &= err < 1e-4
            notes.append(f"C({a},{t})={r.constant:.6f}")
    elapsed = time.perf_counter() - start
    ok = exact_third and orange and ratios and constants and elapsed < 30.0
    acceptance_log("7", ok, f"lambda=1/3 {exact_third}, orange root {orange}, p41/p40 {ratios}, "
                   f"constant {constants}; " + ", ".join(notes), elapsed)
    assert ok


# -- 8 --------------------------------------------------------------------------------

def test_criterion_8_monte_carlo(acceptance_log):
    start = time.perf_counter()
    samples, seed = 10**6, 20240601
    rows = []
    for a, t, n, exact in CRITERION_3:
        params = _p(a, t)
        est = mc_estimate(params, n, samples, seed)
        again = mc_estimate(params, n, samples, seed, workers=4)
        rows.append((abs(est.mean - float(exact)) <= 4 * est.stderr, est == again))
    elapsed = time.perf_counter() - start
    ok = all(within and same for within, same in rows)
    acceptance_log("8", ok, f"10^6 samples within 4 stderr and bit-identical on rerun: {rows}", elapsed)
    assert ok
