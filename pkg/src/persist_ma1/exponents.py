"""Persistence exponents: the smallest positive zero of each region's denominator.

Signs are decided rigorously: E(theta, x) is summed exactly in rationals up to
a cutoff and the tail is bounded, so a sign is only reported when the partial
sum clears the tail bound.  Brackets therefore provably contain a sign change.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional

from .errors import DomainError
from .model import Params, fmt_rational
from .phase_map import Region, applicable_regions, classify
from .poly import Poly, gcd
from .region_formulas import orange_F, orange_cutoff

DEFAULT_TOL = 1e-12
SCAN_FACTOR = Fraction(3, 2)
SCAN_SUBDIVISIONS = 8


class ExponentKind(str, Enum):
    ROOT_OF_E = "RootOfE"
    YELLOW_EQUATION = "YellowEquation"
    ORANGE_POLYNOMIAL = "OrangePolynomial"
    SUPEREXPONENTIAL = "Superexponential"
    TRIVIAL_ONE = "TrivialOne"
    TRIVIAL_ZERO = "TrivialZero"
    NOT_FOUND = "NotFound"


ROOT_KINDS = frozenset({ExponentKind.ROOT_OF_E, ExponentKind.YELLOW_EQUATION,
                        ExponentKind.ORANGE_POLYNOMIAL})


def _round_up(x: Fraction) -> float:
    f = float(x)
    return f if Fraction(f) >= x else math.nextafter(f, math.inf)


@dataclass(frozen=True)
class Enclosure:
    """The closed interval [mid - rad, mid + rad], evaluated exactly."""

    mid: float
    rad: float

    @classmethod
    def from_bounds(cls, lo: Fraction, hi: Fraction) -> Enclosure:
        mid = float((lo + hi) / 2)
        fm = Fraction(mid)
        return cls(mid, _round_up(max(hi - fm, fm - lo)))

    @classmethod
    def exact(cls, x: Fraction) -> Enclosure:
        return cls.from_bounds(x, x)

    @property
    def lo(self) -> Fraction:
        return Fraction(self.mid) - Fraction(self.rad)

    @property
    def hi(self) -> Fraction:
        return Fraction(self.mid) + Fraction(self.rad)

    def contains(self, x) -> bool:
        x = Fraction(x)
        return self.lo <= x <= self.hi

    def as_json(self) -> dict:
        return {"mid": self.mid, "rad": self.rad}


@dataclass(frozen=True)
class ExponentResult:
    kind: ExponentKind
    z0: Optional[Enclosure]
    lam: Optional[Enclosure]
    precision: float
    constant: Optional[float] = None
    region: Optional[str] = None
    via: Optional[Params] = None
    bracket: Optional[tuple[Fraction, Fraction]] = None
    window: Optional[tuple[Fraction, Fraction]] = None

    def as_json(self) -> dict:
        out = {
            "kind": self.kind.value,
            "region": self.region,
            "z0": self.z0.as_json() if self.z0 else None,
            "lambda": self.lam.as_json() if self.lam else None,
            "constant": self.constant,
            "precision": self.precision,
        }
        if self.via is not None:
            out["via"] = self.via.as_json()
        if self.window is not None:
            out["window"] = [fmt_rational(w) for w in self.window]
        return out


# -- rigorous evaluation of E(theta, x) ----------------------------------------------

def _E_bounds(theta: Fraction, x: Fraction, tol: Fraction) -> tuple[Fraction, Fraction]:
    """(S, T) with |E(theta, x) - S| <= T <= tol, for |theta| <= 1."""
    ax, at = abs(x), abs(theta)
    e_factor = Fraction(3) ** math.ceil(ax)  # e^|x| <= 3^ceil|x|
    S = Fraction(1)
    term = Fraction(1)  # theta^(k(k-1)/2) x^k / k!
    tpow = Fraction(1)  # theta^(k-1)
    plain = Fraction(1)  # |x|^k / k!
    k = 0
    while True:
        k += 1
        if k > 1:
            tpow *= theta
        term = term * tpow * x / k
        plain = plain * ax / k
        S += term
        # bound on sum_{j > k} |term_j|
        nxt = abs(term) * at**k * ax / (k + 1)
        if nxt == 0:
            return S, Fraction(0)
        bounds = [plain * ax / (k + 1) * e_factor]
        rho = at ** (k + 1) * ax / (k + 2)
        if rho < 1:
            bounds.append(nxt / (1 - rho))
        T = min(bounds)
        if T <= tol:
            return S, T


def eval_E_rigorous(theta, x, tol: float = DEFAULT_TOL) -> Enclosure:
    """Enclosure of E(theta, x) with radius at most ``tol``."""
    theta, x = Fraction(theta), Fraction(x)
    if abs(theta) > 1:
        raise DomainError("rigorous tail bound needs |theta| <= 1")
    if tol <= 0:
        raise DomainError("tol must be positive")
    S, T = _E_bounds(theta, x, Fraction(tol) / 2)
    mid = float(S)
    rad = _round_up(T + abs(Fraction(mid) - S))
    return Enclosure(mid, rad)


def _sign(bounds: Callable[[Fraction], tuple[Fraction, Fraction]]) -> int:
    """Sign of a quantity known through ``bounds(tol) -> (S, T)``; 0 if provably or practically zero."""
    tol = Fraction(1, 2**40)
    while True:
        S, T = bounds(tol)
        if abs(S) > T:
            return 1 if S > 0 else -1
        if T == 0 or tol < Fraction(1, 2**400):
            return 0
        tol = tol / 2**60


# -- generic scan + bisection ----------------------------------------------------------

def _scan_points(z_max: Fraction, scale: Fraction) -> list[Fraction]:
    start = scale / 64
    marks = [Fraction(0), start]
    while marks[-1] < z_max:
        marks.append(min(marks[-1] * SCAN_FACTOR, z_max))
    pts = []
    for lo, hi in zip(marks, marks[1:]):
        pts.extend(lo + (hi - lo) * i / SCAN_SUBDIVISIONS for i in range(1, SCAN_SUBDIVISIONS + 1))
    return pts


def _smallest_positive_root(sign_at: Callable[[Fraction], int], z_max: Fraction, scale: Fraction,
                            tol: Fraction) -> Optional[tuple[Fraction, Fraction]]:
    prev_z, prev_s = Fraction(0), sign_at(Fraction(0))
    if prev_s == 0:
        raise DomainError("function vanishes at z = 0")
    for z in _scan_points(z_max, scale):
        s = sign_at(z)
        if s == 0:
            return z, z
        if s != prev_s:
            lo, hi = prev_z, z
            while hi - lo > tol:
                mid = (lo + hi) / 2
                sm = sign_at(mid)
                if sm == 0:
                    return mid, mid
                if sm == prev_s:
                    lo = mid
                else:
                    hi = mid
            return lo, hi
        prev_z, prev_s = z, s
    return None


# -- orange: exact real-root isolation ---------------------------------------------------

def _sturm_chain(p: Poly) -> list[Poly]:
    chain = [p, p.derivative()]
    while not chain[-1].is_zero():
        chain.append(-divmod(chain[-2], chain[-1])[1])
    return chain[:-1]


def _variations(chain: list[Poly], x: Fraction) -> int:
    signs = [v for v in (q(x) for q in chain) if v != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if (u < 0) != (v < 0))


def orange_polynomial(params: Params) -> Poly:
    """z F(z) - 1 in the variable z, F truncated at its last nonzero term."""
    p = orange_cutoff(params)
    if p is None or p == math.inf:
        raise DomainError(f"zF(z) - 1 is not a polynomial at {params}")
    F = orange_F(params, int(p))
    return Poly([Fraction(-1)] + list(F), var="z")


def _orange_root(params: Params, tol: Fraction) -> Optional[tuple[Fraction, Fraction]]:
    P = orange_polynomial(params)
    Q = P.divexact(gcd(P, P.derivative()))  # square-free part, same roots
    chain = _sturm_chain(Q)
    bound = 1 + max(abs(c / Q.leading) for c in Q.coeffs[:-1])
    lo, hi = Fraction(0), bound
    if _variations(chain, lo) - _variations(chain, hi) == 0:
        return None
    # shrink (lo, hi] until it holds exactly the smallest positive root
    while _variations(chain, lo) - _variations(chain, hi) > 1:
        mid = (lo + hi) / 2
        if _variations(chain, lo) - _variations(chain, mid) >= 1:
            hi = mid
        else:
            lo = mid
    if Q(hi) == 0:
        return hi, hi
    s_hi = Q(hi) > 0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        v = Q(mid)
        if v == 0:
            return mid, mid
        if (v > 0) == s_hi:
            hi = mid
        else:
            lo = mid
    return lo, hi


# -- public API ---------------------------------------------------------------------------

def _root_result(kind: ExponentKind, bracket, tol: float, region: str) -> ExponentResult:
    lo, hi = bracket
    return ExponentResult(
        kind=kind,
        z0=Enclosure.from_bounds(lo, hi),
        lam=Enclosure.from_bounds(1 / hi, 1 / lo),
        precision=tol,
        region=region,
        bracket=(lo, hi),
    )


def _blue_sign_fn(params: Params) -> Callable[[Fraction], int]:
    a, t = params.a, params.theta
    return lambda z: _sign(lambda tol: _E_bounds(t, -z / (1 + a), tol))


def _yellow_sign_fn(params: Params) -> Callable[[Fraction], int]:
    a, t = params.a, params.theta
    mu = (1 + a / t) / (1 + a)
    c1, c2 = a / (t * (1 + a)), a / (1 + a)

    def bounds(z: Fraction, tol: Fraction):
        w = abs(mu * z) + 1
        S1, T1 = _E_bounds(t, c1 * z, tol / 2)
        S2, T2 = _E_bounds(t, c2 * z, tol / (2 * w))
        return S1 - mu * z * S2, T1 + abs(mu * z) * T2

    return lambda z: _sign(lambda tol: bounds(z, tol))


def find_exponent(params: Params, tol: float = DEFAULT_TOL, z_max=None) -> ExponentResult:
    """Persistence exponent lambda = 1/z0 for the canonical region of ``params``."""
    if tol <= 0:
        raise DomainError("tol must be positive")
    assignment = classify(params)
    region = assignment.canonical
    name = region.value

    if region in (Region.DUAL_POSITIVE, Region.DUAL_NEGATIVE):
        inner = find_exponent(assignment.dual_target, tol, z_max)
        return replace(inner, region=name, via=assignment.dual_target)
    if region is Region.WHITE_ONE:
        one = Enclosure.exact(Fraction(1))
        return ExponentResult(ExponentKind.TRIVIAL_ONE, one, one, tol, region=name)
    if region is Region.ZERO_TAIL:
        return ExponentResult(ExponentKind.TRIVIAL_ZERO, None, Enclosure.exact(Fraction(0)), tol, region=name)
    if region is Region.THETA_ONE or (region is Region.GREY and params.b == 0):
        return ExponentResult(ExponentKind.SUPEREXPONENTIAL, None, Enclosure.exact(Fraction(0)), tol,
                              region=name)
    if region is Region.GREY:
        # b > 0: p_n vanishes once theta^n b >= 1
        return ExponentResult(ExponentKind.TRIVIAL_ZERO, None, Enclosure.exact(Fraction(0)), tol, region=name)

    ftol = Fraction(tol)
    a, t = params.a, params.theta
    zmax = Fraction(z_max) if z_max is not None else 64 * (1 + a)

    if region is Region.ORANGE:
        kind = ExponentKind.ORANGE_POLYNOMIAL
        bracket = _orange_root(params, ftol)
    elif region in (Region.BLUE, Region.GREEN):
        kind = ExponentKind.ROOT_OF_E
        if t == 0:
            bracket = (1 + a, 1 + a)  # E(0, x) = 1 + x
        else:
            bracket = _smallest_positive_root(_blue_sign_fn(params), zmax, 1 + a, ftol)
    elif region is Region.YELLOW:
        kind = ExponentKind.YELLOW_EQUATION
        bracket = _smallest_positive_root(_yellow_sign_fn(params), zmax, 1 + a, ftol)
    else:  # pragma: no cover
        raise DomainError(f"no exponent rule for region {name}")

    if bracket is None:
        return ExponentResult(ExponentKind.NOT_FOUND, None, None, tol, region=name,
                              window=(Fraction(0), zmax))
    result = _root_result(kind, bracket, tol, name)
    if region is Region.BLUE:
        result = replace(result, constant=asymptotic_constant(params, result.lam))
    return result


def asymptotic_constant(params: Params, lam: Enclosure) -> float:
    """C with p_n ~ C * lam^(n+2) in the blue region."""
    if Region.BLUE not in applicable_regions(params):
        raise DomainError(f"asymptotic constant is only available in the blue region, not at {params}")
    a, t = params.a, params.theta
    z0 = 1 / Fraction(lam.mid)
    tol = Fraction(1, 2**80)
    num, _ = _E_bounds(t, a * z0 / (1 + a), tol)
    den, _ = _E_bounds(t, -t * z0 / (1 + a), tol)
    return float((1 + a) * num / den)


def defining_function_sign(params: Params, z) -> int:
    """Rigorous sign of the canonical region's denominator function at z (>= 0)."""
    region = classify(params).canonical
    z = Fraction(z)
    if region in (Region.BLUE, Region.GREEN):
        return _blue_sign_fn(params)(z)
    if region is Region.YELLOW:
        return _yellow_sign_fn(params)(z)
    if region is Region.ORANGE:
        v = orange_polynomial(params)(z)
        return (v > 0) - (v < 0)
    raise DomainError(f"no denominator function for region {region.value}")
