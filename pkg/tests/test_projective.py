# tests/test_projective.py
from __future__ import annotations

from fractions import Fraction

import pytest

from rapprox.core.errors import DimensionMismatchError, InvalidPointError, SamePointError, ZeroChartError
from rapprox.geometry.projective import (
    ProjPoint,
    affine_chart_distance,
    distance,
    format_point,
    gamma,
    height,
    line_through,
    normalize,
    parse_point,
    permute,
    plucker_height,
)


@pytest.mark.parametrize(
    "raw, expected",
    [
        ((2, -4, 6), (1, -2, 3)),
        ((-2, 4), (1, -2)),
        ((0, -3, 6), (0, 1, -2)),
        ((0, 0, -5), (0, 0, 1)),
    ],
)
def test_normalize(raw, expected):
    assert normalize(raw) == ProjPoint(expected)


@pytest.mark.parametrize("coords", [(2, 4), (0, 0), (-1, 2), (3,)])
def test_invalid_points_are_rejected(coords):
    with pytest.raises(InvalidPointError):
        ProjPoint(coords)


def test_normalize_all_zero():
    with pytest.raises(InvalidPointError) as e:
        normalize((0, 0, 0))
    assert e.value.detail["error"] == "invalid_point"


def test_height():
    assert height(ProjPoint((3, -7, 2))) == 7


@pytest.mark.parametrize("j", [1, 2, 5, 40])
def test_distance_along_line(origin_p1, j):
    assert distance(origin_p1, ProjPoint((1, j))) == Fraction(1, j)


def test_distance_is_clamped():
    assert distance(ProjPoint((1, 1)), ProjPoint((1, -1))) == 1
    assert distance(ProjPoint((1, 1)), ProjPoint((1, -1)), clamp=False) == 2


def test_distance_identity_and_symmetry():
    p, q = ProjPoint((1, 2, 3)), ProjPoint((2, 3, 5))
    assert distance(p, p) == 0
    assert distance(p, q) == distance(q, p)
    assert 0 < distance(p, q) <= 1


def test_distance_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        distance(ProjPoint((0, 1)), ProjPoint((0, 0, 1)))


def test_affine_chart_distance():
    assert affine_chart_distance(ProjPoint((1, 2)), ProjPoint((3, 5)), 0) == Fraction(1, 3)
    with pytest.raises(ZeroChartError):
        affine_chart_distance(ProjPoint((0, 1)), ProjPoint((1, 1)), 0)


def test_line_through():
    p, q = ProjPoint((0, 0, 1)), ProjPoint((1, 0, 0))
    line = line_through(p, q)
    assert line.dual == ProjPoint((0, 1, 0))
    assert line.passes_through(p) and line.passes_through(q)
    assert not line.passes_through(ProjPoint((0, 1, 0)))
    assert plucker_height(line_through(ProjPoint((1, 0, 0)), ProjPoint((0, 1, 0)))) == 1


def test_line_through_same_point():
    p = ProjPoint((1, 2, 3))
    with pytest.raises(SamePointError):
        line_through(p, p)


def test_gamma_on_best_sequence(origin_p1):
    assert gamma(origin_p1, ProjPoint((1, 4))) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        gamma(origin_p1, origin_p1)


def test_permute_keeps_height_and_distance():
    p, q = ProjPoint((1, -2, 3)), ProjPoint((2, 1, 1))
    perm = (2, 0, 1)
    assert permute(p, perm) == ProjPoint((3, 1, -2))
    assert height(permute(p, perm)) == height(p)
    assert distance(permute(p, perm), permute(q, perm)) == distance(p, q)
    with pytest.raises(InvalidPointError):
        permute(p, (0, 0, 1))


def test_parse_and_format_point():
    assert parse_point("2:4:6") == ProjPoint((1, 2, 3))
    assert parse_point("-1,3") == ProjPoint((1, -3))
    assert parse_point("[0:0:1]") == ProjPoint((0, 0, 1))
    assert format_point(ProjPoint((0, 1, -2))) == "0:1:-2"
    with pytest.raises(InvalidPointError):
        parse_point("a:b")
