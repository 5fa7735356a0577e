"""Generating functions and closed forms for p_n in each region, plus the dispatcher."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import dualities
from .errors import DivisionByZeroTheta, DomainError, Unreachable
from .model import Params, PersistenceTable
from .phase_map import Region, applicable_regions, classify, trivial_value
from .series import Series, deformed_exp_series, mul, reciprocal, shift_down


def _pos(x: Fraction) -> Fraction:
    return x if x > 0 else Fraction(0)


@dataclass(frozen=True)
class DerivedScalars:
    b: Fraction
    mu: Optional[Fraction]
    nu: Optional[Fraction]
    p_cutoff: Optional[int | float]  # math.inf when the orange F series never terminates


def orange_cutoff(params: Params) -> Optional[int | float]:
    """The p with theta^(p+1) < b <= theta^p, for 0 < theta <= 1 and b > 0."""
    t, b = params.theta, params.b
    if not (0 < t <= 1 and b > 0):
        return None
    if t == 1:
        return math.inf
    p = 0
    tp = t  # theta^(p+1)
    while tp >= b:
        p += 1
        tp *= t
    return p


def derived_scalars(params: Params) -> DerivedScalars:
    a, t = params.a, params.theta
    mu = (1 + a / t) / (1 + a) if t != 0 else None
    nu = (1 - 1 / t) / (1 + a) if t < 0 else None
    return DerivedScalars(b=-a, mu=mu, nu=nu, p_cutoff=orange_cutoff(params))


def _require(params: Params, region: Region):
    if region not in applicable_regions(params):
        raise DomainError(f"{params} is not in the {region.value} region")


# -- blue ---------------------------------------------------------------------

def blue_gf(params: Params, order: int, *, check_region: bool = True) -> Series:
    """[E(theta, a z/(1+a)) - E(theta, -z/(1+a))] / [z E(theta, -z/(1+a))].

    ``check_region=False`` evaluates the formula formally outside its region of
    validity (used for the Mallows-Riordan identity at a = -theta).
    """
    if check_region:
        _require(params, Region.BLUE)
    a, t = params.a, params.theta
    num = deformed_exp_series(t, a / (1 + a), order + 1) - deformed_exp_series(t, -1 / (1 + a), order + 1)
    den = deformed_exp_series(t, -1 / (1 + a), order)
    return mul(shift_down(num), reciprocal(den))


def blue_recurrence_table(params: Params, n_max: int) -> list[Fraction]:
    """p_0..p_n_max from the integral recursion behind the blue generating function."""
    _require(params, Region.BLUE)
    a, t = params.a, params.theta
    inv = 1 / (1 + a)
    # weights w_k = (-1)^(k-1) theta^(k(k-1)/2) (1+a)^(-k) / k!
    w = [Fraction(0)]
    term = Fraction(1)
    for k in range(1, n_max + 1):
        term = term * t ** (k - 1) * inv / k
        w.append(term if k % 2 == 1 else -term)
    p = [Fraction(1)]
    for n in range(1, n_max + 1):
        acc = sum((w[k] * p[n - k] for k in range(1, n + 1)), Fraction(0))
        acc += (inv ** (n + 1) * (-1) ** n * t ** (n * (n + 1) // 2)
                * (1 - (-a) ** (n + 1)) / math.factorial(n + 1))
        p.append(acc)
    return p


def blue_recurrence_pn(params: Params, n: int) -> Fraction:
    return blue_recurrence_table(params, n)[n]


# -- green --------------------------------------------------------------------

def green_gf(params: Params, order: int) -> Series:
    a, t = params.a, params.theta
    if t == 0:
        raise DivisionByZeroTheta("theta = 0 belongs to the blue region")
    _require(params, Region.GREEN)
    const = (t * a + 1) / (t * (1 + a))
    num = (deformed_exp_series(t, -1 / (t * (1 + a)), order + 1)
           - deformed_exp_series(t, -1 / (1 + a), order + 1))
    den = deformed_exp_series(t, -1 / (1 + a), order)
    out = mul(shift_down(num), reciprocal(den)) + const
    if out[0] != 1:  # pragma: no cover - algebraic identity
        raise AssertionError(f"green formula gives p_0 = {out[0]}")
    return out


# -- yellow -------------------------------------------------------------------

def yellow_gf(params: Params, order: int) -> Series:
    _require(params, Region.YELLOW)
    a, t = params.a, params.theta
    mu = derived_scalars(params).mu
    ratio = mul(deformed_exp_series(t, a / (t * (1 + a)), order + 1),
                reciprocal(deformed_exp_series(t, a / (1 + a), order + 1)))
    bracket = ratio - Series.z(order + 1) * mu
    return shift_down(reciprocal(bracket) - 1)


# -- orange / grey ------------------------------------------------------------

def orange_F(params: Params, order: int) -> Series:
    t, b = params.theta, params.b
    if not (0 < t <= 1 and 0 <= b <= t):
        raise DomainError(f"orange F needs 0 < theta <= 1 and 0 <= -a <= theta; got {params}")
    coeffs = []
    for i in range(order + 1):
        base = _pos(t**i - b)
        if base == 0:
            coeffs.append(Fraction(0))
            continue
        c = base ** (i + 1) / (math.factorial(i + 1) * t ** (i * (i + 1) // 2) * (1 - b) ** (i + 1))
        coeffs.append(c if i % 2 == 0 else -c)
    return Series(coeffs)


def orange_gf(params: Params, order: int) -> Series:
    _require(params, Region.ORANGE)
    F = orange_F(params, order)
    return mul(F, reciprocal(1 - F.mul_z()))


def grey_pn(params: Params, n: int) -> Fraction:
    """Closed form for a in (-1, 0], 1 <= theta <= -1/a."""
    _require(params, Region.GREY)
    t, b = params.theta, params.b
    if b == 0:
        return Fraction(1, math.factorial(n + 1)) / t ** (n * (n + 1) // 2)
    base = _pos(1 / t**n - b)
    if base == 0:
        return Fraction(0)
    return t ** (n * (n + 1) // 2) * base ** (n + 1) / (math.factorial(n + 1) * (1 - b) ** (n + 1))


def grey_table(params: Params, order: int) -> list[Fraction]:
    return [grey_pn(params, n) for n in range(order + 1)]


# -- per-region dispatch ------------------------------------------------------

def region_table(params: Params, region: Region, order: int) -> list[Fraction]:
    """p_0..p_order by one specific (non-duality) region formula."""
    if region is Region.BLUE:
        return list(blue_gf(params, order))
    if region is Region.GREEN:
        return list(green_gf(params, order))
    if region is Region.YELLOW:
        return list(yellow_gf(params, order))
    if region is Region.ORANGE:
        return list(orange_gf(params, order))
    if region is Region.GREY:
        return grey_table(params, order)
    if region in (Region.WHITE_ONE, Region.ZERO_TAIL, Region.THETA_ONE):
        _require(params, region)
        if region is Region.WHITE_ONE:
            return [Fraction(1)] * (order + 1)
        if region is Region.ZERO_TAIL:
            return [Fraction(1)] + [Fraction(0)] * order
        return [Fraction(1, math.factorial(n + 1)) for n in range(order + 1)]
    raise DomainError(f"{region.value} is not a direct region formula")


_METHOD = {
    Region.BLUE: "blue_gf",
    Region.GREEN: "green_gf",
    Region.YELLOW: "yellow_gf",
    Region.ORANGE: "orange_gf",
    Region.GREY: "grey_closed",
}


def persistence_series(params: Params, order: int) -> PersistenceTable:
    """p_0..p_order via the canonical route for ``params``."""
    if order < 0:
        raise DomainError("order must be nonnegative")
    assignment = classify(params)
    region = assignment.canonical
    if trivial_value(params, 0) is not None:
        values = [trivial_value(params, n) for n in range(order + 1)]
        return PersistenceTable(params, values, "trivial", {"region": region.value}).validate()
    if region in _METHOD:
        values = region_table(params, region, order)
        return PersistenceTable(params, values, _METHOD[region], {"region": region.value}).validate()
    if region in (Region.DUAL_POSITIVE, Region.DUAL_NEGATIVE):
        inner = persistence_series(assignment.dual_target, order)
        meta = {"region": region.value, "via": inner.params.as_json(), "inner_method": inner.method}
        return PersistenceTable(params, inner.values, "duality", meta).validate()
    raise Unreachable(f"no region formula for {params}")  # pragma: no cover


def flip_table(params: Params, order: int) -> list[Fraction]:
    """p_n via the generating-function flip from the partner parameter pair.

    theta > 0 uses the table at (a, 1/theta); theta < 0 < a uses (1/a, theta).
    """
    a, t = params.a, params.theta
    if t > 0:
        partner = Params(a, 1 / t)
    elif t < 0 < a:
        partner = Params(1 / a, t)
    else:
        raise DomainError(f"no generating-function flip applies at {params}")
    q = Series(persistence_series(partner, order).values)
    return list(dualities.moebius_flip(q))
