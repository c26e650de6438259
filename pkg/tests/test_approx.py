# tests/test_approx.py
from __future__ import annotations

import time
from fractions import Fraction
from functools import partial

import pytest

from rapprox.approx.cluster import (
    axis_sequence,
    cluster_box,
    dist_height_floor,
    line_cluster,
    product_min_gamma,
)
from rapprox.approx.enumerate import (
    count_by_enumeration,
    counting_function,
    curve_images_near,
    enumerate_box,
    enumerate_near,
    enumerate_p1,
    enumerate_p2,
    mobius,
    near_chart,
    near_frontier,
)
from rapprox.approx.estimate import (
    Frontier,
    RecordPoint,
    empirical_alpha,
    growth_ratio,
    measure,
    metric_ratio_bounds,
    summarize,
    tail_median,
)
from rapprox.core.config import settings
from rapprox.core.errors import (
    EmptyEstimateError,
    InsufficientLadderError,
    InvalidConfigurationError,
    PreconditionError,
)
from rapprox.geometry.projective import ProjPoint, affine_chart_distance, distance, height
from rapprox.geometry.ratcurves import best_sequence, evaluate, named_curve

# ---------------------------------------------------------------------------
# Enumeration and counting
# ---------------------------------------------------------------------------


def test_small_enumerations():
    assert sorted(p.coords for p in enumerate_p1(1)) == [(0, 1), (1, -1), (1, 0), (1, 1)]
    assert len(enumerate_p2(1)) == 13
    assert len(set(enumerate_p2(3))) == len(enumerate_p2(3))


@pytest.mark.parametrize("n, b", [(1, 1), (1, 2), (1, 12), (2, 1), (2, 2), (2, 5)])
def test_closed_form_matches_enumeration(n, b):
    assert counting_function(n, b) == count_by_enumeration(n, b)


def test_two_points_of_height_two_closed_form():
    assert counting_function(1, 2) == 8
    assert counting_function(2, 1) == 13


@pytest.mark.parametrize("d, mu", [(1, 1), (2, -1), (4, 0), (6, 1), (7, -1), (30, -1), (12, 0)])
def test_mobius(d, mu):
    assert mobius(d) == mu


def test_enumeration_with_workers(two_workers):
    assert len(enumerate_p1(40)) == counting_function(1, 40)
    assert len(enumerate_p2(6)) == counting_function(2, 6)


def test_bad_ranges():
    with pytest.raises(InvalidConfigurationError):
        enumerate_box([3])
    with pytest.raises(InvalidConfigurationError):
        enumerate_box([3, -1])
    with pytest.raises(InvalidConfigurationError):
        counting_function(0, 5)
    with pytest.raises(InvalidConfigurationError):
        enumerate_near(ProjPoint((0, 1)), 10, Fraction(0))


def test_enumerate_near(origin_p1):
    pts = enumerate_near(origin_p1, 100, Fraction(1, 10))
    assert ProjPoint((1, 10)) in pts
    assert origin_p1 in pts
    assert ProjPoint((1, 9)) not in pts
    for p in pts:
        assert height(p) <= 100
        assert distance(origin_p1, p) <= Fraction(1, 10)


def test_curve_images_near_leave_out_the_target():
    curve, t0 = named_curve("cusp")
    images = curve_images_near(curve, t0, 30, Fraction(1, 10))
    assert evaluate(curve, t0) not in images
    assert ProjPoint((20, 1, 8000)) in images


@pytest.mark.parametrize("coords, b", [((1, 3), 60), ((2, -5), 45), ((2, 1, 3), 30)])
@pytest.mark.parametrize("metric", ["chordal", "chart"])
def test_near_frontier_matches_measuring_the_window(coords, b, metric):
    target = ProjPoint(coords)
    radius = Fraction(1, 10)
    fn = distance if metric == "chordal" else partial(affine_chart_distance, chart=near_chart(target))
    brute = Frontier.of(r for r in measure(target, enumerate_near(target, b, radius), fn) if r.height > 1)
    assert near_frontier(target, b, radius, metric) == brute


def test_near_frontier_with_workers(monkeypatch):
    target = ProjPoint((1, 3))
    serial = near_frontier(target, 80, Fraction(1, 10))
    monkeypatch.setattr(settings, "threads", 2)
    assert near_frontier(target, 80, Fraction(1, 10)) == serial
    with pytest.raises(InvalidConfigurationError):
        near_frontier(target, 80, Fraction(1, 10), metric="taxicab")


def test_near_chart():
    assert near_chart(ProjPoint((0, 1))) == 1
    assert near_chart(ProjPoint((1, -1, 1))) == 0
    assert near_chart(ProjPoint((1, 1, 2))) == 2


# ---------------------------------------------------------------------------
# Estimators
# ---------------------------------------------------------------------------


def _record(d: Fraction, h: int, x: int = 1) -> RecordPoint:
    return RecordPoint(ProjPoint((x, h)), d, h)


def test_frontier_keeps_pareto_records():
    a, b, c = _record(Fraction(1, 2), 3), _record(Fraction(1, 4), 5), _record(Fraction(1, 3), 10)
    front = Frontier.of([a, b, c])
    assert front.records == (a, b)
    assert Frontier.of([a]).merge(Frontier.of([b, c])) == Frontier.of([b, c]).merge(Frontier.of([a]))
    assert len(front.add(_record(Fraction(1), 2))) == 2


def test_tail_median_flags_short_input():
    records = [_record(Fraction(1, j), j) for j in range(2, 5)]
    median, short = tail_median(records)
    assert short
    assert median == pytest.approx(1.0)


def test_empirical_alpha_on_line(origin_p1):
    est = empirical_alpha(origin_p1, enumerate_near(origin_p1, 200, Fraction(1, 10)))
    assert est.tail_median_gamma == pytest.approx(1.0)
    assert est.min_dist_height == 1
    assert not est.insufficient
    assert [r.distance for r in est.records] == sorted((r.distance for r in est.records), reverse=True)


def test_empirical_alpha_on_cusp():
    curve, t0 = named_curve("cusp")
    target = evaluate(curve, t0)
    est = empirical_alpha(target, curve_images_near(curve, t0, 120, Fraction(1, 20)))
    assert est.tail_median_gamma == pytest.approx(1.5)


def test_empirical_alpha_needs_records(origin_p1):
    with pytest.raises(EmptyEstimateError):
        empirical_alpha(origin_p1, [origin_p1, ProjPoint((1, 0))])


def test_metric_ratio_bounds():
    target = ProjPoint((1, 1, 2))
    lo, hi = metric_ratio_bounds(target, enumerate_near(target, 200, Fraction(1, 50)), near_chart(target))
    assert 1 <= lo <= hi <= 2
    assert metric_ratio_bounds(target, [target], 2) is None


def test_summarize_matches_empirical_alpha(origin_p1):
    points = enumerate_near(origin_p1, 200, Fraction(1, 10))
    est = summarize(origin_p1, near_frontier(origin_p1, 200, Fraction(1, 10)), 200)
    assert est == empirical_alpha(origin_p1, points, max_height=200)
    with pytest.raises(EmptyEstimateError):
        summarize(origin_p1, Frontier())


def test_growth_ratio():
    rungs = (10, 20, 40, 80, 160)
    report = growth_ratio([(b, b * b) for b in rungs], [(b, b) for b in rungs])
    assert report.slope_a == pytest.approx(2.0)
    assert report.slope_b == pytest.approx(1.0)
    assert report.dominant == "a"
    with pytest.raises(InsufficientLadderError):
        growth_ratio([(10, 1), (20, 2)], [(10, 1), (20, 2)])


# ---------------------------------------------------------------------------
# Clustering and products
# ---------------------------------------------------------------------------


def test_line_cluster_at_coordinate_point(origin_p2):
    report = line_cluster(origin_p2, cluster_box(origin_p2, 50, 2), 2)
    assert report.line_count == 8
    assert report.max_line_height == 2
    smaller = line_cluster(origin_p2, cluster_box(origin_p2, 25, 2), 2)
    assert set(smaller.members) == set(report.members)


def test_line_cluster_needs_p2(origin_p1):
    with pytest.raises(InvalidConfigurationError):
        line_cluster(origin_p1, [], 2)
    with pytest.raises(PreconditionError):
        cluster_box(ProjPoint((1, 1, 1)), 10, 2)


def test_dist_height_floor():
    assert dist_height_floor(50) == 1


def test_product_barrier(origin_p1):
    target = (origin_p1, origin_p1)
    g, (r1, r2) = product_min_gamma(target, 30)
    assert g == pytest.approx(2.0)
    for _, d, h in axis_sequence(target, 6):
        assert d * h == 1
    with pytest.raises(PreconditionError):
        product_min_gamma((ProjPoint((0, 0, 1)), origin_p1), 10)


# ---------------------------------------------------------------------------
# Full-scale runs
# ---------------------------------------------------------------------------


@pytest.mark.slow
def test_line_at_full_scale(origin_p1):
    start = time.perf_counter()
    est = summarize(origin_p1, near_frontier(origin_p1, 10_000), 10_000)
    assert time.perf_counter() - start < 10
    assert 0.95 <= est.tail_median_gamma <= 1.05
    chart = summarize(origin_p1, near_frontier(origin_p1, 10_000, metric="chart"), 10_000)
    assert abs(chart.tail_median_gamma - est.tail_median_gamma) <= 0.05
    points = {r.point for r in est.records} | {r.point for r in chart.records}
    assert metric_ratio_bounds(origin_p1, points, near_chart(origin_p1)) == (1, 1)


@pytest.mark.slow
@pytest.mark.parametrize("name, lo, hi", [("cusp", 1.40, 1.60), ("twisted_cubic", 2.85, 3.15)])
def test_curves_at_full_scale(name, lo, hi):
    curve, t0 = named_curve(name)
    target = evaluate(curve, t0)
    stream = set(best_sequence(curve, t0, 1000)) | set(curve_images_near(curve, t0, 1000))
    est = empirical_alpha(target, stream)
    assert lo <= est.tail_median_gamma <= hi


@pytest.mark.slow
def test_product_barrier_at_full_scale(origin_p1):
    g, _ = product_min_gamma((origin_p1, origin_p1), 500)
    assert g >= 1.9


@pytest.mark.slow
def test_line_cluster_is_stable(origin_p2):
    small = line_cluster(origin_p2, cluster_box(origin_p2, 250, 2), 2)
    large = line_cluster(origin_p2, cluster_box(origin_p2, 500, 2), 2)
    assert large.line_count <= small.line_count
    assert large.max_line_height == small.max_line_height == 2
