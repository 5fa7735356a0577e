"""Dense univariate polynomials with exact rational coefficients.

Used both as the symbolic-theta coefficient ring of the series module and as
plain polynomials in z for root isolation.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable

from .errors import InexactDivision


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class Poly:
    """Immutable polynomial ``sum(c[i] * var**i)``; ``coeffs`` runs low to high."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "theta"):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def gen(cls, var: str = "theta") -> Poly:
        return cls((0, 1), var)

    @classmethod
    def const(cls, c, var: str = "theta") -> Poly:
        return cls((c,), var)

    @classmethod
    def from_terms(cls, terms: dict[int, Fraction], var: str = "theta") -> Poly:
        if not terms:
            return cls((), var)
        cs = [Fraction(0)] * (max(terms) + 1)
        for k, c in terms.items():
            cs[k] += c
        return cls(cs, var)

    # -- basic queries -----------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def constant(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def nonzero_terms(self) -> int:
        return sum(1 for c in self.coeffs if c != 0)

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- ring operations ---------------------------------------------------

    def _coerce(self, other) -> Poly | None:
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly((other,), self.var)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly((self.coeff(i) + o.coeff(i) for i in range(n)), self.var)

    __radd__ = __add__

    def __neg__(self):
        return Poly((-c for c in self.coeffs), self.var)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly((c * other for c in self.coeffs), self.var)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly((), self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out, self.var)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # scalar division only; polynomial division goes through divexact/divmod
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return Poly((c / other for c in self.coeffs), self.var)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly((1,), self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __divmod__(self, other: Poly):
        other = self._coerce(other)
        if other is None or other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.leading
        if len(rem) - 1 < dq:
            return Poly((), self.var), self
        quot = [Fraction(0)] * (len(rem) - dq)
        for k in range(len(rem) - 1 - dq, -1, -1):
            q = rem[k + dq] / lead
            quot[k] = q
            if q:
                for j, c in enumerate(other.coeffs):
                    rem[k + j] -= q * c
        return Poly(quot, self.var), Poly(rem[:dq], self.var)

    def divexact(self, other) -> Poly:
        q, r = divmod(self, other)
        if not r.is_zero():
            raise InexactDivision(f"{self} is not divisible by {other}")
        return q

    def derivative(self) -> Poly:
        return Poly((k * c for k, c in enumerate(self.coeffs) if k), self.var)

    def monic(self) -> Poly:
        return self / self.leading if self.coeffs else self

    def compose_scale(self, s) -> Poly:
        """Return ``p(s * var)``."""
        s = as_fraction(s)
        return Poly((c * s**k for k, c in enumerate(self.coeffs)), self.var)

    # -- comparison / display ----------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.constant)
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({[str(c) for c in self.coeffs]!r}, var={self.var!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts: list[tuple[str, str]] = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = self.var if k == 1 else f"{self.var}^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor over Q."""
    while not q.is_zero():
        p, q = q, divmod(p, q)[1]
    return p.monic()
