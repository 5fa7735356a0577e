"""Phase-diagram classification of (a, theta) and the closed-form trivial cases."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from .errors import DomainError
from .model import Params


class Region(str, Enum):
    WHITE_ONE = "WhiteOne"
    ZERO_TAIL = "ZeroTail"
    THETA_ONE = "ThetaOne"
    BLUE = "Blue"
    GREEN = "Green"
    YELLOW = "Yellow"
    ORANGE = "Orange"
    GREY = "GreyPiecewise"
    DUAL_POSITIVE = "DualPositive"
    DUAL_NEGATIVE = "DualNegative"
    DUAL_FLIP = "DualFlip"

    def __str__(self):
        return self.value


# Canonical choice only; every applicable formula must agree anyway.
PRIORITY = (
    Region.WHITE_ONE, Region.ZERO_TAIL, Region.THETA_ONE, Region.BLUE,
    Region.GREEN, Region.YELLOW, Region.ORANGE, Region.GREY,
    Region.DUAL_POSITIVE, Region.DUAL_NEGATIVE, Region.DUAL_FLIP,
)
DUALITY_TAGS = frozenset({Region.DUAL_POSITIVE, Region.DUAL_NEGATIVE, Region.DUAL_FLIP})
TRIVIAL_TAGS = frozenset({Region.WHITE_ONE, Region.ZERO_TAIL, Region.THETA_ONE})


@dataclass(frozen=True)
class RegionAssignment:
    applicable: frozenset
    canonical: Region
    dual_target: Optional[Params] = None

    def ordered(self) -> list[Region]:
        return [r for r in PRIORITY if r in self.applicable]

    def as_json(self) -> dict:
        return {
            "canonical": self.canonical.value,
            "applicable": [r.value for r in self.ordered()],
            "dual_target": self.dual_target.as_json() if self.dual_target else None,
        }


def _neg_inv(a: Fraction) -> Fraction | float:
    """-1/a, with +inf at a = 0."""
    return math.inf if a == 0 else -1 / a


def applicable_regions(params: Params) -> frozenset:
    a, t = params.a, params.theta
    tags = set()

    if (-1 <= t <= 1 and a <= min(-t, 0)) or (t <= 0 and a <= 0):
        tags.add(Region.WHITE_ONE)
    if -1 < a < 0 and t >= -1 / a:
        tags.add(Region.ZERO_TAIL)
    if t == 1:
        tags.add(Region.THETA_ONE)
    if (0 <= t <= 1 and a >= 0) or (-1 <= t < 0 and -t <= a <= -1 / t):
        tags.add(Region.BLUE)
    if -1 <= t < 0 and a >= -1 / t:
        tags.add(Region.GREEN)
    # theta = 0 would make the yellow formula divide by zero; a = theta = 0 is Blue/White.
    if -1 <= t < 0 and 0 <= a <= -t:
        tags.add(Region.YELLOW)
    if 0 < t <= 1 and -t <= a <= 0:
        tags.add(Region.ORANGE)
    if -1 < a <= 0 and 1 <= t <= _neg_inv(a):
        tags.add(Region.GREY)
    if t > 1 and a > 0:
        tags.add(Region.DUAL_POSITIVE)
    if t < -1 and a > 0:
        tags.add(Region.DUAL_NEGATIVE)
    # Generating-function flip: (a, 1/theta) for theta > 0, (1/a, theta) for theta < 0 < a.
    if t > 0 or (t < 0 and a > 0):
        tags.add(Region.DUAL_FLIP)
    return frozenset(tags)


def classify(params: Params) -> RegionAssignment:
    if params.a <= -1:
        raise DomainError(f"need a > -1, got a = {params.a}")
    tags = applicable_regions(params)
    canonical = next(r for r in PRIORITY if r in tags)
    target = None
    if canonical is Region.DUAL_POSITIVE:
        target = Params(1 / params.a, 1 / params.theta)
    elif canonical is Region.DUAL_NEGATIVE:
        target = Params(params.a, 1 / params.theta)
    return RegionAssignment(tags, canonical, target)


def trivial_value(params: Params, n: int) -> Optional[Fraction]:
    """Closed-form p_n for the white, zero-tail and theta = 1 cases, else None."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    tags = applicable_regions(params)
    values = set()
    if Region.WHITE_ONE in tags:
        values.add(Fraction(1))
    if Region.ZERO_TAIL in tags:
        values.add(Fraction(1) if n == 0 else Fraction(0))
    if Region.THETA_ONE in tags:
        values.add(Fraction(1, math.factorial(n + 1)))
    if not values:
        return None
    if len(values) > 1:  # pragma: no cover - the trivial regions are pairwise disjoint
        raise AssertionError(f"trivial rules disagree at {params}, n={n}: {values}")
    return values.pop()
