# rapprox/approx/cluster.py
"""
Line clustering of good approximators, the dist * H floor on the line, and
the product barrier.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from rapprox.approx.enumerate import enumerate_box, enumerate_p1
from rapprox.approx.estimate import Frontier, RecordPoint, measure
from rapprox.core.errors import InvalidConfigurationError, PreconditionError
from rapprox.geometry.projective import LineInP2, ProjPoint, distance, height, line_through, plucker_height
from rapprox.geometry.ratcurves import best_parameters
from rapprox.geometry.surfaces import ProductModel

logger = logging.getLogger("approx")


@dataclass(frozen=True)
class ClusterReport:
    threshold: Fraction
    admitted: int
    members: dict[LineInP2, int]

    @property
    def line_count(self) -> int:
        return len(self.members)

    @property
    def max_line_height(self) -> int:
        return max((plucker_height(line) for line in self.members), default=0)

    def to_dict(self) -> dict:
        return {
            "threshold": str(self.threshold),
            "admitted": self.admitted,
            "line_count": self.line_count,
            "max_line_height": self.max_line_height,
            "lines": [
                {"line": str(line.dual), "members": n}
                for line, n in sorted(self.members.items(), key=lambda kv: kv[0].dual.coords)
            ],
        }


def line_cluster(target: ProjPoint, points: Iterable[ProjPoint], c) -> ClusterReport:
    """Group the points with dist * H <= c by the line joining them to target."""
    if target.dim != 2:
        raise InvalidConfigurationError("line clustering works in P^2", dim=target.dim)
    c = Fraction(c)
    members: dict[LineInP2, int] = {}
    admitted = 0
    for q in points:
        if q == target or distance(target, q) * height(q) > c:
            continue
        admitted += 1
        line = line_through(target, q)
        members[line] = members.get(line, 0) + 1
    report = ClusterReport(c, admitted, members)
    logger.info(f"{admitted} points with dist*H <= {c} lie on {report.line_count} lines")
    return report


def cluster_box(target: ProjPoint, b: int, c) -> list[ProjPoint]:
    """
    Candidates for line_cluster around a coordinate point.

    At e_k, dist * H equals the largest other coordinate, so the box
    |x_i| <= c (i != k), |x_k| <= b holds every admissible point.
    """
    if height(target) != 1 or sum(1 for x in target.coords if x) != 1:
        raise PreconditionError("box clustering needs a coordinate point", point=str(target))
    k = next(i for i, x in enumerate(target.coords) if x)
    cap = math.floor(Fraction(c))
    bounds = [b if i == k else min(cap, b) for i in range(len(target.coords))]
    return enumerate_box(bounds)


def dist_height_floor(b: int, target: Optional[ProjPoint] = None, min_first: int = 1) -> Fraction:
    """Minimum of dist * H over points of P^1 with height <= b and |x_0| >= min_first."""
    p = target or ProjPoint((0, 1))
    values = [
        distance(p, q) * height(q)
        for q in enumerate_p1(b)
        if q != p and abs(q.coords[0]) >= min_first
    ]
    if not values:
        raise PreconditionError("no point passes the filter", max_height=b, min_first=min_first)
    return min(values)


# ---------------------------------------------------------------------------
# Products
# ---------------------------------------------------------------------------

def _product_gamma(r1: RecordPoint, r2: RecordPoint, bidegree: tuple[int, int]) -> float:
    a, b = bidegree
    num = a * math.log(r1.height) + b * math.log(r2.height)
    return num / -math.log(max(r1.distance, r2.distance))


def product_min_gamma(
    target: tuple[ProjPoint, ProjPoint],
    b: int,
    bidegree: tuple[int, int] = (1, 1),
) -> tuple[float, tuple[RecordPoint, RecordPoint]]:
    """
    Smallest gamma over pairs with both factors off the target, heights <= b.

    Replacing a factor point by one with smaller distance and smaller height
    never raises gamma, so only pairs of factor records are tried.
    """
    bidegree = ProductModel((target[0].dim, target[1].dim), tuple(bidegree)).bidegree
    if target[0].dim != 1 or target[1].dim != 1:
        raise PreconditionError("the product barrier is enumerated on P^1 x P^1")
    pts = enumerate_p1(b)
    fronts = [Frontier.of(measure(t, pts)) for t in target]
    best: Optional[tuple[float, tuple[RecordPoint, RecordPoint]]] = None
    for r1 in fronts[0].records:
        for r2 in fronts[1].records:
            g = _product_gamma(r1, r2, bidegree)
            if best is None or g < best[0]:
                best = (g, (r1, r2))
    if best is None:
        raise PreconditionError("no factor point at distance < 1", max_height=b)
    logger.info(f"product barrier at B = {b}: min gamma {best[0]:.4f}")
    return best


def axis_sequence(
    target: tuple[ProjPoint, ProjPoint],
    count: int,
    bidegree: tuple[int, int] = (1, 1),
) -> list[tuple[tuple[ProjPoint, ProjPoint], Fraction, int]]:
    """Pairs (P_j, Q) with P_j -> P along the first factor, with distance and height."""
    model = ProductModel((target[0].dim, target[1].dim), tuple(bidegree))
    if target[0].dim != 1:
        raise PreconditionError("the axis sequence moves along a P^1 factor")
    out = []
    for p in best_parameters(target[0], count):
        pair = (p, target[1])
        out.append((pair, model.distance(target, pair), model.height(pair)))
    return out

