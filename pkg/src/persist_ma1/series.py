"""Truncated formal power series in z over an exact coefficient ring.

Coefficients are either :class:`fractions.Fraction` or :class:`Poly` (a
polynomial in theta).  A series of order N stores the coefficients of
z^0..z^N; binary operations truncate to the smaller order.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

from .errors import ConstantTermNotOne, NonInvertibleConstantTerm, NonzeroConstantTerm
from .poly import Poly, as_fraction

Coeff = Union[Fraction, Poly]


def _coerce_coeff(c) -> Coeff:
    return c if isinstance(c, Poly) else as_fraction(c)


def _is_zero(c: Coeff) -> bool:
    return c.is_zero() if isinstance(c, Poly) else c == 0


def _invert_constant(c: Coeff) -> Fraction:
    if isinstance(c, Poly):
        if not c.is_constant() or c.is_zero():
            raise NonInvertibleConstantTerm(f"constant term {c} is not a unit")
        c = c.constant
    if c == 0:
        raise NonInvertibleConstantTerm("constant term is zero")
    return 1 / c


class Series:
    """Immutable truncated power series."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = tuple(_coerce_coeff(c) for c in coeffs)
        if not cs:
            raise ValueError("a series needs at least the z^0 coefficient")
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name, value):
        raise AttributeError("Series is immutable")

    @classmethod
    def constant(cls, c, order: int) -> Series:
        return cls([c] + [Fraction(0)] * order)

    @classmethod
    def z(cls, order: int) -> Series:
        cs = [Fraction(0)] * (order + 1)
        if order >= 1:
            cs[1] = Fraction(1)
        return cls(cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, order: int) -> Series:
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return Series(self.coeffs[: order + 1])

    def __add__(self, other):
        if not isinstance(other, Series):
            other = Series.constant(other, self.order)
        n = min(self.order, other.order) + 1
        return Series(self.coeffs[i] + other.coeffs[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Series(-c for c in self.coeffs)

    def __sub__(self, other):
        if not isinstance(other, Series):
            other = Series.constant(other, self.order)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Series):
            return mul(self, other)
        if isinstance(other, (int, Fraction, Poly)):
            return Series(c * other for c in self.coeffs)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Series([{', '.join(str(c) for c in self.coeffs)}])"

    def mul_z(self) -> Series:
        """``z * s`` truncated to the same order."""
        return Series((Fraction(0),) + self.coeffs[:-1])

    def neg_z(self) -> Series:
        """``s(-z)``."""
        return Series(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs))

    def subs_theta(self, theta) -> Series:
        """Evaluate every polynomial coefficient at a rational theta."""
        t = as_fraction(theta)
        return Series(c(t) if isinstance(c, Poly) else c for c in self.coeffs)

    def derivative(self) -> Series:
        if self.order == 0:
            return Series([Fraction(0)])
        return Series(k * c for k, c in enumerate(self.coeffs) if k)

    def integral(self) -> Series:
        """Termwise antiderivative with zero constant term (order grows by one)."""
        return Series([Fraction(0)] + [c / (k + 1) for k, c in enumerate(self.coeffs)])


def deformed_exp_series(theta, scale, order: int) -> Series:
    """Coefficients of ``E(theta, scale*z)``: theta^(k(k-1)/2) * scale^k / k!."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    theta = _coerce_coeff(theta)
    scale = _coerce_coeff(scale)
    coeffs: list[Coeff] = [Fraction(1)]
    theta_pow: Coeff = Fraction(1)  # theta^(k-1) at step k
    for k in range(1, order + 1):
        if k > 1:
            theta_pow = theta_pow * theta
        coeffs.append(coeffs[-1] * theta_pow * scale / k)
    return Series(coeffs)


def mul(s: Series, t: Series) -> Series:
    n = min(s.order, t.order)
    out = []
    for k in range(n + 1):
        acc = Fraction(0)
        for j in range(k + 1):
            a = s.coeffs[j]
            if _is_zero(a):
                continue
            b = t.coeffs[k - j]
            if _is_zero(b):
                continue
            acc = acc + a * b
        out.append(acc)
    return Series(out)


def reciprocal(s: Series) -> Series:
    inv0 = _invert_constant(s.coeffs[0])
    out: list[Coeff] = [Fraction(inv0)]
    for k in range(1, s.order + 1):
        acc = Fraction(0)
        for j in range(1, k + 1):
            a = s.coeffs[j]
            if _is_zero(a):
                continue
            acc = acc + a * out[k - j]
        out.append(-acc * inv0)
    return Series(out)


def shift_down(s: Series) -> Series:
    """Divide a z-divisible series by z."""
    if not _is_zero(s.coeffs[0]):
        raise NonzeroConstantTerm(f"constant term {s.coeffs[0]} is not zero")
    if s.order == 0:
        raise ValueError("shifting an order-0 series leaves nothing")
    return Series(s.coeffs[1:])


def log_series(s: Series) -> Series:
    """Truncated ``log s`` from ``(log s)' = s'/s``; requires s(0) = 1."""
    if s.coeffs[0] != 1:
        raise ConstantTermNotOne(f"constant term is {s.coeffs[0]}, not 1")
    out: list[Coeff] = [Fraction(0)]
    for k in range(1, s.order + 1):
        acc = Fraction(0)
        for j in range(1, k):
            b = s.coeffs[k - j]
            if _is_zero(b) or _is_zero(out[j]):
                continue
            acc = acc + j * out[j] * b
        out.append(s.coeffs[k] - acc / k)
    return Series(out)


def factorial_scale(s: Series) -> list[Coeff]:
    """Coefficients multiplied by k! (exponential-generating-function view)."""
    return [c * math.factorial(k) for k, c in enumerate(s.coeffs)]
