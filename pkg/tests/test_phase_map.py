from fractions import Fraction as F

import pytest

from persist_ma1.errors import DomainError
from persist_ma1.model import Params, parse_rational
from persist_ma1.phase_map import Region, applicable_regions, classify, trivial_value


def P(a, t):
    return Params(F(a), F(t))


@pytest.mark.parametrize("a, t, canonical", [
    ("-1/2", "3", Region.ZERO_TAIL),
    ("-1/2", "-1/2", Region.WHITE_ONE),
    ("0", "-1/2", Region.WHITE_ONE),
    ("-1/4", "1/4", Region.WHITE_ONE),
    ("3", "1", Region.THETA_ONE),
    ("1", "1/2", Region.BLUE),
    ("2", "0", Region.BLUE),
    ("2", "-1/2", Region.BLUE),
    ("3", "-1/2", Region.GREEN),
    ("1/4", "-1/2", Region.YELLOW),
    ("-1/4", "1/2", Region.ORANGE),
    ("-1/4", "2", Region.GREY),
    ("0", "2", Region.GREY),
    ("2", "3", Region.DUAL_POSITIVE),
    ("1", "-2", Region.DUAL_NEGATIVE),
])
def test_canonical_region(a, t, canonical):
    assert classify(P(a, t)).canonical is canonical


def test_dual_targets():
    assert classify(P(2, 3)).dual_target == P("1/2", "1/3")
    assert classify(P(3, -4)).dual_target == P(3, "-1/4")
    assert classify(P(1, "1/2")).dual_target is None


def test_boundary_points_carry_every_tag():
    tags = applicable_regions(P(2, "-1/2"))
    assert {Region.BLUE, Region.GREEN, Region.DUAL_FLIP} <= tags
    tags = applicable_regions(P("-1/2", 1))
    assert {Region.THETA_ONE, Region.ORANGE, Region.GREY} <= tags


def test_yellow_excludes_theta_zero():
    assert Region.YELLOW not in applicable_regions(P(0, 0))


def test_domain():
    with pytest.raises(DomainError):
        Params(-1, 0)
    with pytest.raises(DomainError):
        parse_rational("one half")
    with pytest.raises(TypeError):
        parse_rational(0.5)


def test_decimal_parsing_is_exact():
    assert parse_rational("0.25") == F(1, 4)
    assert parse_rational("-1/4") == F(-1, 4)
    assert parse_rational("0.1") == F(1, 10)


@pytest.mark.parametrize("a, t, n, value", [
    ("-1/2", "-1/2", 5, F(1)),
    ("-1/2", "3", 0, F(1)),
    ("-1/2", "3", 4, F(0)),
    ("3", "1", 4, F(1, 120)),
    ("1", "1/2", 3, None),
])
def test_trivial_value(a, t, n, value):
    assert trivial_value(P(a, t), n) == value


def test_assignment_json():
    out = classify(P(2, 3)).as_json()
    assert out["canonical"] == "DualPositive"
    assert out["dual_target"] == {"a": "1/2", "theta": "1/3"}
