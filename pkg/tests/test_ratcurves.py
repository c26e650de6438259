# tests/test_ratcurves.py
from __future__ import annotations

import random
from fractions import Fraction

import pytest

from rapprox.core.errors import InvalidCurveError, InvalidPointError
from rapprox.geometry.projective import ProjPoint, distance, gamma, normalize
from rapprox.geometry.ratcurves import (
    CURVES,
    alpha_along_curve,
    best_parameters,
    best_sequence,
    branch_multiplicity,
    branch_multiplicity_max,
    complement,
    evaluate,
    from_coefficients,
    from_expressions,
    image_height,
    named_curve,
)


@pytest.mark.parametrize(
    "name, image, degree, mult, alpha",
    [
        ("line", (0, 1), 1, 1, Fraction(1)),
        ("cusp", (0, 0, 1), 3, 2, Fraction(3, 2)),
        ("twisted_cubic", (0, 0, 0, 1), 3, 1, Fraction(3)),
        ("quintic_cusp", (0, 0, 1), 5, 3, Fraction(5, 3)),
    ],
)
def test_named_curves(name, image, degree, mult, alpha):
    curve, t0 = named_curve(name)
    assert evaluate(curve, t0) == ProjPoint(image)
    assert curve.degree == degree
    assert branch_multiplicity(curve, t0) == mult
    assert alpha_along_curve(curve, t0) == alpha


def test_alpha_with_embedding_degree():
    curve, t0 = named_curve("line")
    assert alpha_along_curve(curve, t0, e=3) == 3
    with pytest.raises(ValueError):
        alpha_along_curve(curve, t0, e=0)


def test_unknown_curve():
    with pytest.raises(InvalidCurveError):
        named_curve("nodal")


def test_from_coefficients():
    curve = from_coefficients([[1, 0], [0, 1]])
    assert curve.degree == 1 and curve.ambient_dim == 1
    assert evaluate(curve, ProjPoint((2, 3))) == ProjPoint((2, 3))


@pytest.mark.parametrize("exprs", [("s", "t**2"), ("s*t", "t**2"), ("s**2+t", "t**2")])
def test_invalid_curves(exprs):
    with pytest.raises(InvalidCurveError):
        from_expressions(exprs)


def test_complement():
    assert complement(ProjPoint((0, 1))) == (1, 0)
    assert complement(ProjPoint((1, 0))) == (0, 1)
    a, b = 3, 5
    x, y = complement(ProjPoint((a, b)))
    assert abs(a * y - b * x) == 1
    with pytest.raises(InvalidPointError):
        complement(ProjPoint((0, 0, 1)))


def test_best_parameters():
    assert best_parameters(ProjPoint((0, 1)), 3) == [ProjPoint((1, 1)), ProjPoint((1, 2)), ProjPoint((1, 3))]


def test_best_sequence_on_cusp():
    curve, t0 = named_curve("cusp")
    target = evaluate(curve, t0)
    seq = best_sequence(curve, t0, 6)
    assert seq[1] == ProjPoint((2, 1, 8))
    for j, p in enumerate(seq, start=1):
        assert distance(target, p) == Fraction(1, j * j)
        assert image_height(curve, best_parameters(t0, j)[-1]) == j ** 3


def test_branch_multiplicity_max():
    curve, t0 = named_curve("cusp")
    assert branch_multiplicity_max(curve, [t0]) == 2
    with pytest.raises(InvalidPointError):
        branch_multiplicity_max(curve, [t0, ProjPoint((0, 1))])


@pytest.mark.parametrize("name", sorted(CURVES))
def test_smooth_at_random_parameters(name):
    curve, t0 = named_curve(name)
    rng = random.Random(20240601)
    for _ in range(10):
        t = normalize((rng.randint(1, 40), rng.choice([-1, 1]) * rng.randint(1, 40)))
        assert branch_multiplicity(curve, t) == 1


@pytest.mark.parametrize("name", sorted(CURVES))
def test_gamma_along_best_sequence(name):
    curve, t0 = named_curve(name)
    target = evaluate(curve, t0)
    last = best_sequence(curve, t0, 200)[-1]
    assert gamma(target, last) == pytest.approx(float(alpha_along_curve(curve, t0)), abs=0.05)
