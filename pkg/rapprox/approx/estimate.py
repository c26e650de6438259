# rapprox/approx/estimate.py
"""
Record frontiers and empirical approximation constants.

A record is a point whose (distance, height) pair is not beaten in both
coordinates by any other point seen. The estimate reports the frontier
itself plus two summaries of gamma = log H / -log dist: the median over the
closest quarter of the records, and a least-squares slope.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Callable, Iterable, Optional, Sequence

import numpy as np

from rapprox.core.config import settings
from rapprox.core.errors import EmptyEstimateError, InsufficientLadderError
from rapprox.geometry.projective import ProjPoint, affine_chart_distance, distance, format_point, height

logger = logging.getLogger("approx")


@dataclass(frozen=True)
class RecordPoint:
    point: Any
    distance: Fraction
    height: int

    @property
    def neg_log_dist(self) -> float:
        return -math.log(self.distance)

    @property
    def log_height(self) -> float:
        return math.log(self.height)

    @property
    def gamma(self) -> float:
        return self.log_height / self.neg_log_dist

    def key(self) -> tuple:
        return (self.distance, self.height, _coords(self.point))

    def to_row(self) -> dict:
        return {
            "point": _label(self.point),
            "dist_num": self.distance.numerator,
            "dist_den": self.distance.denominator,
            "height": self.height,
            "neg_log_dist": self.neg_log_dist,
            "log_height": self.log_height,
            "gamma": self.gamma,
        }


RECORD_COLUMNS = ("point", "dist_num", "dist_den", "height", "neg_log_dist", "log_height", "gamma")


def _coords(point: Any) -> tuple:
    if isinstance(point, ProjPoint):
        return point.coords
    if isinstance(point, tuple):
        return tuple(_coords(p) for p in point)
    return (point,)


def _label(point: Any) -> str:
    if isinstance(point, ProjPoint):
        return format_point(point)
    if isinstance(point, tuple):
        return "|".join(_label(p) for p in point)
    return str(point)


def _pareto(records: Iterable[RecordPoint]) -> tuple[RecordPoint, ...]:
    kept: list[RecordPoint] = []
    best_height: Optional[int] = None
    for r in sorted(records, key=RecordPoint.key):
        if kept and kept[-1].distance == r.distance:
            continue
        if best_height is None or r.height < best_height:
            kept.append(r)
            best_height = r.height
    # decreasing distance
    return tuple(reversed(kept))


@dataclass(frozen=True)
class Frontier:
    """
    Pareto-minimal records under (distance, height).

    ``merge`` is associative and commutative: equal pairs keep the record
    with the smallest coordinates.
    """

    records: tuple[RecordPoint, ...] = ()

    @classmethod
    def of(cls, records: Iterable[RecordPoint]) -> "Frontier":
        return cls(_pareto(r for r in records if 0 < r.distance < 1))

    def add(self, record: RecordPoint) -> "Frontier":
        if not 0 < record.distance < 1:
            return self
        return Frontier(_pareto(self.records + (record,)))

    def merge(self, other: "Frontier") -> "Frontier":
        return Frontier(_pareto(self.records + other.records))

    def __len__(self) -> int:
        return len(self.records)


@dataclass(frozen=True)
class ApproxEstimate:
    records: tuple[RecordPoint, ...]
    tail_median_gamma: float
    slope_fit: float
    max_height: int
    insufficient: bool = False

    @cached_property
    def min_dist_height(self) -> Fraction:
        return min(r.distance * r.height for r in self.records)

    def to_dict(self) -> dict:
        return {
            "records": [r.to_row() for r in self.records],
            "tail_median_gamma": self.tail_median_gamma,
            "slope_fit": self.slope_fit,
            "max_height": self.max_height,
            "insufficient": self.insufficient,
        }


@dataclass(frozen=True)
class GrowthReport:
    slope_a: float
    slope_b: float
    dominant: Optional[str] = None
    rungs: tuple[int, ...] = field(default=(), compare=False)

    def to_dict(self) -> dict:
        return {"slope_a": self.slope_a, "slope_b": self.slope_b, "dominant": self.dominant}


# ---------------------------------------------------------------------------
# Estimators
# ---------------------------------------------------------------------------

def measure(
    target: Any,
    points: Iterable[Any],
    metric: Callable[[Any, Any], Fraction] = distance,
    height_fn: Callable[[Any], int] = height,
) -> list[RecordPoint]:
    """Records for every point at distance strictly between 0 and 1."""
    out = []
    for q in points:
        d = Fraction(metric(target, q))
        if 0 < d < 1:
            out.append(RecordPoint(q, d, int(height_fn(q))))
    return out


def tail_median(records: Sequence[RecordPoint]) -> tuple[float, bool]:
    """Median gamma over the closest quarter; all records and a flag when short."""
    if len(records) < settings.tail_min_records:
        return float(np.median([r.gamma for r in records])), True
    closest = sorted(records, key=lambda r: r.distance)
    k = max(1, math.ceil(len(closest) / 4))
    return float(np.median([r.gamma for r in closest[:k]])), False


def slope(records: Sequence[RecordPoint]) -> float:
    xs = np.array([r.neg_log_dist for r in records])
    ys = np.array([r.log_height for r in records])
    if len(records) < 2 or np.ptp(xs) == 0:
        return float(np.mean(ys / xs))
    return float(np.polyfit(xs, ys, 1)[0])


def summarize(
    target: Any,
    frontier: Frontier,
    max_height: Optional[int] = None,
) -> ApproxEstimate:
    """Tail median and slope of a record frontier."""
    if not len(frontier):
        raise EmptyEstimateError("no point at distance < 1 with height > 1", target=_label(target))
    median, short = tail_median(frontier.records)
    if short:
        logger.warning(f"only {len(frontier)} records; tail median taken over all of them")
    est = ApproxEstimate(
        frontier.records,
        median,
        slope(frontier.records),
        max_height if max_height is not None else max(r.height for r in frontier.records),
        short,
    )
    logger.info(f"{len(frontier)} records near {_label(target)}: tail median {median:.4f}")
    return est


def empirical_alpha(
    target: Any,
    points: Iterable[Any],
    *,
    metric: Callable[[Any, Any], Fraction] = distance,
    height_fn: Callable[[Any], int] = height,
    max_height: Optional[int] = None,
) -> ApproxEstimate:
    records = [r for r in measure(target, points, metric, height_fn) if r.height > 1]
    if not records:
        raise EmptyEstimateError("no point at distance < 1 with height > 1", target=_label(target))
    top = max_height if max_height is not None else max(r.height for r in records)
    return summarize(target, Frontier.of(records), top)


def metric_ratio_bounds(
    target: ProjPoint,
    points: Iterable[ProjPoint],
    chart: int,
    below: Fraction = Fraction(1, 100),
) -> Optional[tuple[Fraction, Fraction]]:
    """
    Smallest and largest distance / affine_chart_distance over the points
    with distance below ``below``; None when no point qualifies.
    """
    ratios = []
    for q in points:
        d = distance(target, q, clamp=False)
        if 0 < d < below and q.coords[chart]:
            ratios.append(d / affine_chart_distance(target, q, chart))
    if not ratios:
        return None
    return min(ratios), max(ratios)


def growth_ratio(
    counts_a: Sequence[tuple[int, int]],
    counts_b: Sequence[tuple[int, int]],
    threshold: float = 0.5,
) -> GrowthReport:
    """
    Log-log slopes of two counting functions over the top half of a ladder.

    ``dominant`` names the set growing faster by more than ``threshold``.
    """
    if len(counts_a) < 4 or len(counts_b) < 4:
        raise InsufficientLadderError("a ladder needs at least 4 rungs", rungs=min(len(counts_a), len(counts_b)))

    def top_slope(counts: Sequence[tuple[int, int]]) -> float:
        pts = sorted(counts)
        top = pts[len(pts) // 2:]
        xs = np.log([float(b) for b, _ in top])
        ys = np.log([float(max(n, 1)) for _, n in top])
        return float(np.polyfit(xs, ys, 1)[0])

    sa, sb = top_slope(counts_a), top_slope(counts_b)
    dominant = "a" if sa - sb > threshold else "b" if sb - sa > threshold else None
    return GrowthReport(sa, sb, dominant, tuple(b for b, _ in sorted(counts_a)))
