"""Profiles, the phi_l polynomials, Mallows-Riordan polynomials and the
combinatorial expressions for p_n."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, InexactDivision
from .model import Params
from .phase_map import Region, applicable_regions, trivial_value
from .poly import Poly
from .series import deformed_exp_series, log_series, mul, reciprocal


@dataclass(frozen=True)
class Profile:
    """Multiplicity vector r with sum(i * r_i) == ell."""

    ell: int
    r: tuple[int, ...]

    def __post_init__(self):
        if len(self.r) != self.ell or sum((i + 1) * ri for i, ri in enumerate(self.r)) != self.ell:
            raise ValueError(f"{self.r} is not a {self.ell}-profile")

    @property
    def parts(self) -> int:
        return sum(self.r)


@dataclass(frozen=True)
class PhiPolynomial:
    ell: int
    poly: Poly


@dataclass(frozen=True)
class MallowsRiordan:
    n: int
    poly: Poly


def _partitions(n: int, largest: int):
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def enumerate_profiles(ell: int) -> list[Profile]:
    """All ell-profiles, in decreasing lexicographic order of r."""
    if ell < 1:
        raise DomainError("ell must be positive")
    out = []
    for part in _partitions(ell, ell):
        r = [0] * ell
        for k in part:
            r[k - 1] += 1
        out.append(tuple(r))
    return [Profile(ell, r) for r in sorted(out, reverse=True)]


def multinomial(counts) -> int:
    out, total = 1, 0
    for c in counts:
        total += c
        out *= math.comb(total, c)
    return out


def profile_count(k: int, p: Profile) -> int:
    """Number of length-k nonnegative integer vectors with profile p."""
    zeros = k - p.parts
    if zeros < 0:
        return 0
    return multinomial(list(p.r) + [zeros])


@lru_cache(maxsize=None)
def _phi_poly(ell: int) -> Poly:
    if ell == 0:
        return Poly.const(1)
    terms: dict[int, Fraction] = {}
    for p in enumerate_profiles(ell):
        coeff = Fraction((-1) ** p.parts * multinomial(p.r))
        deg = 0
        for i, ri in enumerate(p.r, start=1):
            if ri:
                coeff /= math.factorial(i) ** ri
                deg += ri * i * (i - 1) // 2
        terms[deg] = terms.get(deg, Fraction(0)) + coeff
    return Poly.from_terms(terms)


def phi(ell: int) -> PhiPolynomial:
    """Coefficient of z^ell in 1/E(theta, z), summed over ell-profiles."""
    if ell < 0:
        raise DomainError("ell must be nonnegative")
    return PhiPolynomial(ell, _phi_poly(ell))


def phi_value(ell: int, theta) -> Fraction:
    return _phi_poly(ell)(Fraction(theta))


def monomial_count(ell: int) -> int:
    return phi(ell).poly.nonzero_terms()


def square_sum_count(ell: int) -> int:
    """Distinct values of n_1^2 + ... + n_k^2 over partitions of ell."""
    if ell == 0:
        return 1
    return len({sum(k * k for k in part) for part in _partitions(ell, ell)})


@lru_cache(maxsize=None)
def _log_E_symbolic(order: int):
    return log_series(deformed_exp_series(Poly.gen(), 1, order))


@lru_cache(maxsize=None)
def _mallows_poly(n: int) -> Poly:
    # order rounded up so that consecutive calls share one log expansion
    order = max(8, 1 << (n - 1).bit_length())
    c = _log_E_symbolic(order)[n] * math.factorial(n)
    if not isinstance(c, Poly):
        c = Poly.const(c)
    try:
        return c.divexact((Poly.gen() - 1) ** (n - 1))
    except InexactDivision as exc:  # pragma: no cover - would be a log_series bug
        raise InexactDivision(f"J_{n}: {exc}") from exc


def mallows_J(n: int) -> MallowsRiordan:
    if n < 1:
        raise DomainError("n must be positive")
    return MallowsRiordan(n, _mallows_poly(n))


def mallows_ratio_coeffs(theta, order: int) -> list[Fraction]:
    """Coefficients of E(theta, -theta z/(1-theta)) / E(theta, -z/(1-theta)).

    Coefficient n equals J_(n+1)(theta)/n!.
    """
    t = Fraction(theta)
    if t == 1:
        raise DomainError("theta = 1 makes the scale 1/(1-theta) singular")
    num = deformed_exp_series(t, -t / (1 - t), order)
    den = deformed_exp_series(t, -1 / (1 - t), order)
    return list(mul(num, reciprocal(den)))


# -- combinatorial expressions for p_n -------------------------------------------

def _theta_pow(t: Fraction, e: int) -> Fraction:
    # 0^0 = 1 by convention
    return Fraction(1) if e == 0 else t**e


def comb_pn_blue(params: Params, n: int) -> Fraction:
    if Region.BLUE not in applicable_regions(params):
        raise DomainError(f"{params} is not in the blue region")
    a, t = params.a, params.theta
    total = Fraction(0)
    for k in range(n + 2):
        total += phi_value(n + 1 - k, t) * _theta_pow(t, k * (k - 1) // 2) / math.factorial(k) * (-a) ** k
    return (Fraction(-1) / (1 + a)) ** (n + 1) * total


def comb_pn_dual(params: Params, n: int) -> Fraction:
    """Combinatorial p_n for theta >= 1, a >= 0 (part a) or theta < -1, -1/theta <= a <= -theta (part b)."""
    a, t = params.a, params.theta
    if t >= 1 and a >= 0:
        tb = 1 / t
        total = Fraction(0)
        for k in range(n + 2):
            total += (phi_value(n + 1 - k, tb) * (-a) ** (n + 1 - k)
                      * _theta_pow(tb, k * (k - 1) // 2) / math.factorial(k))
        return total / (1 + a) ** (n + 1)
    if t < -1 and -1 / t <= a <= -t:
        tb = 1 / t
        total = Fraction(0)
        for k in range(n + 2):
            total += phi_value(n + 1 - k, tb) * _theta_pow(tb, k * (k - 1) // 2) / math.factorial(k) * (-a) ** k
        return (Fraction(-1) / (1 + a)) ** (n + 1) * total
    raise DomainError(f"no dual combinatorial formula at {params}")


def comb_pn_green(params: Params, n: int) -> Fraction:
    a, t = params.a, params.theta
    if t == 0:
        raise DomainError("theta = 0 is not in the green region")
    if Region.GREEN not in applicable_regions(params):
        raise DomainError(f"{params} is not in the green region")
    if n == 0:
        return Fraction(1)
    total = Fraction(0)
    for k in range(n + 2):
        # k(k-3)/2 is -1 for k = 1, 2: evaluated as an exact rational power
        total += t ** (k * (k - 3) // 2) / math.factorial(k) * phi_value(n + 1 - k, t)
    return Fraction((-1) ** (n + 1)) / (1 + a) ** (n + 1) * total


def comb_table(params: Params, order: int) -> list[Fraction]:
    """Table by whichever combinatorial expression applies (trivial cases in closed form)."""
    if trivial_value(params, 0) is not None:
        return [trivial_value(params, n) for n in range(order + 1)]
    tags = applicable_regions(params)
    if Region.BLUE in tags:
        return [comb_pn_blue(params, n) for n in range(order + 1)]
    if Region.GREEN in tags:
        return [comb_pn_green(params, n) for n in range(order + 1)]
    try:
        return [comb_pn_dual(params, n) for n in range(order + 1)]
    except DomainError:
        raise DomainError(f"no combinatorial representation is known at {params}") from None
