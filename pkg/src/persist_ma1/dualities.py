"""Parameter-level and generating-function-level dualities."""

from __future__ import annotations

from enum import Enum
from fractions import Fraction

from .errors import ConstantTermNotOne, DomainError, LengthError
from .model import Params, PersistenceTable
from .series import Series, mul, reciprocal


class DualityKind(str, Enum):
    POSITIVE_SWAP = "PositiveSwap"
    NEGATIVE_INVERT = "NegativeInvert"
    MOEBIUS_FLIP = "MoebiusFlip"


def dual_pos(params: Params) -> Params:
    """(a, theta) -> (1/a, 1/theta) for a > 0, theta > 0."""
    if params.a <= 0 or params.theta <= 0:
        raise DomainError(f"positive swap needs a > 0 and theta > 0, got {params}")
    return Params(1 / params.a, 1 / params.theta)


def dual_neg(params: Params) -> Params:
    """(a, theta) -> (a, 1/theta) for a > 0, theta < 0."""
    if params.a <= 0 or params.theta >= 0:
        raise DomainError(f"negative inversion needs a > 0 and theta < 0, got {params}")
    return Params(params.a, 1 / params.theta)


def moebius_flip(q: Series) -> Series:
    """q(-z) / (1 - z q(-z)), truncated to the order of q."""
    if q[0] != 1:
        raise ConstantTermNotOne(f"flip needs a unit constant term, got {q[0]}")
    qm = q.neg_z()
    return mul(qm, reciprocal(1 - qm.mul_z()))


def hidden_duality_residual(p_theta: PersistenceTable, p_inv: PersistenceTable, n: int) -> Fraction:
    """LHS - RHS of p_n(theta) = sum_k p_(n-k)(theta) p_(k-1)(1/theta) (-1)^(k-1) + (-1)^n p_n(1/theta)."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    if len(p_theta) <= n or len(p_inv) <= n:
        raise LengthError(f"tables of length {len(p_theta)}, {len(p_inv)} do not reach n = {n}")
    pa, pb = p_theta.params, p_inv.params
    if pa.a != pb.a or pa.theta <= 0 or pb.theta != 1 / pa.theta:
        raise DomainError(f"tables must belong to (a, theta) and (a, 1/theta), theta > 0; got {pa}, {pb}")
    rhs = sum(((-1) ** (k - 1) * p_theta[n - k] * p_inv[k - 1] for k in range(1, n + 1)), Fraction(0))
    rhs += (-1) ** n * p_inv[n]
    return p_theta[n] - rhs
