"""Value types shared across modules."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .errors import DomainError, PersistError
from .poly import as_fraction


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, an integer, or a decimal string exactly (``"0.25"`` -> 1/4)."""
    if isinstance(text, str):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not an exact rational: {text!r}") from exc
    if isinstance(text, float):
        raise TypeError("binary floats are not accepted as exact parameters")
    return as_fraction(text)


def fmt_rational(x: Fraction) -> str:
    """Always ``"p/q"``, also for integers (``"1/1"``)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Params:
    """Innovations uniform on [-a, 1]; coupling theta."""

    a: Fraction
    theta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", parse_rational(self.a))
        object.__setattr__(self, "theta", parse_rational(self.theta))
        if self.a <= -1:
            raise DomainError(f"need a > -1, got a = {self.a}")

    @property
    def b(self) -> Fraction:
        return -self.a

    def as_json(self) -> dict:
        return {"a": fmt_rational(self.a), "theta": fmt_rational(self.theta)}

    def __str__(self):
        return f"(a={self.a}, theta={self.theta})"


class InvariantViolation(PersistError, AssertionError):
    pass


@dataclass(frozen=True)
class PersistenceTable:
    """p_0..p_N for one parameter pair, with the method that produced it."""

    params: Params
    values: tuple[Fraction, ...]
    method: str
    meta: dict = field(default_factory=dict, compare=False)

    METHODS = frozenset({
        "blue_gf", "green_gf", "yellow_gf", "orange_gf", "grey_closed",
        "recurrence", "combinatorial", "duality", "trivial", "oracle",
    })

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))
        if self.method not in self.METHODS:
            raise ValueError(f"unknown method tag {self.method!r}")

    @property
    def order(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.values[n]

    def __len__(self):
        return len(self.values)

    @property
    def entries(self) -> Iterator[tuple[int, Fraction, float]]:
        for n, v in enumerate(self.values):
            yield n, v, float(v)

    def validate(self) -> PersistenceTable:
        """Check p_0 = 1 and 1 >= p_1 >= p_2 >= ... >= 0."""
        v = self.values
        if v and v[0] != 1:
            raise InvariantViolation(f"{self.params}: p_0 = {v[0]}")
        for n in range(1, len(v)):
            if not 0 <= v[n] <= v[n - 1]:
                raise InvariantViolation(
                    f"{self.params}: p_{n} = {v[n]} breaks 0 <= p_n <= p_(n-1) = {v[n - 1]}")
        return self
