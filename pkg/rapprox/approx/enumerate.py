# rapprox/approx/enumerate.py
"""
Rational points of bounded height.

Every enumerator walks canonical representatives only (gcd 1, first nonzero
coordinate positive), so each point is produced once. Work is split into
contiguous ranges of one coordinate and handed to joblib; the ranges are
concatenated in order, so the output does not depend on the worker count.
"""
from __future__ import annotations

import logging
import math
from fractions import Fraction
from itertools import product
from typing import Iterator, Optional, Sequence

from joblib import Parallel, delayed
from sympy import factorint

from rapprox.approx.estimate import Frontier, RecordPoint
from rapprox.core.config import settings
from rapprox.core.errors import InvalidConfigurationError
from rapprox.geometry.projective import ProjPoint, minor_numerator, normalize
from rapprox.geometry.ratcurves import ParamCurve, evaluate

logger = logging.getLogger("approx")

Coords = tuple[int, ...]

NEAR_METRICS = ("chordal", "chart")


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def _chunks(values: Sequence[int], parts: int) -> list[list[int]]:
    if not values:
        return []
    parts = max(1, min(parts, len(values)))
    size = math.ceil(len(values) / parts)
    return [list(values[k:k + size]) for k in range(0, len(values), size)]


def _run(fn, blocks: list, *args) -> list:
    if settings.workers > 1 and len(blocks) > 1:
        parts = Parallel(n_jobs=settings.workers)(delayed(fn)(*args, blk) for blk in blocks)
    else:
        parts = [fn(*args, blk) for blk in blocks]
    return [c for part in parts for c in part]


def _normalized(bounds: Sequence[int], firsts: Optional[Sequence[int]] = None) -> Iterator[Coords]:
    b0, rest = bounds[0], bounds[1:]
    for x0 in range(b0 + 1) if firsts is None else firsts:
        if x0 == 0:
            if rest:
                for t in _normalized(rest):
                    yield (0,) + t
            continue
        for t in product(*(range(-b, b + 1) for b in rest)):
            if math.gcd(x0, *t) == 1:
                yield (x0,) + t


def _box_block(bounds: Coords, firsts: list[int]) -> list[Coords]:
    return list(_normalized(bounds, firsts))


def _window(center: Fraction, half: Fraction, cap: int) -> range:
    lo = max(-cap, math.ceil(center - half))
    hi = min(cap, math.floor(center + half))
    return range(lo, hi + 1)


def _sign_normalized(t: Coords) -> Coords:
    first = next(x for x in t if x)
    return t if first > 0 else tuple(-x for x in t)


def _near_candidates(target: Coords, chart: int, b: int, radius: Fraction, q: int) -> Iterator[Coords]:
    """Primitive raw vectors with chart coordinate q inside the window."""
    pj = target[chart]
    half = q * radius
    windows = [
        range(q, q + 1) if i == chart else _window(Fraction(q * p, pj), half, b)
        for i, p in enumerate(target)
    ]
    for t in product(*windows):
        if math.gcd(*t) == 1:
            yield t


def _near_block(target: Coords, chart: int, b: int, radius: Fraction, qs: list[int]) -> list[Coords]:
    return [_sign_normalized(t) for q in qs for t in _near_candidates(target, chart, b, radius, q)]


def _survivor_block(
    target: Coords,
    chart: int,
    b: int,
    radius: Fraction,
    metric: str,
    min_height: int,
    qs: list[int],
) -> list[tuple[Coords, int, int, int]]:
    """
    For each chart value, the closest point of every height as
    (coords, numerator, denominator, height).

    Within one chart value and one height both metrics share a denominator,
    so candidates compare on integer numerators.
    """
    hp = max(abs(x) for x in target)
    pj = target[chart]
    out = []
    for q in qs:
        best: dict[int, tuple[int, Coords]] = {}
        for t in _near_candidates(target, chart, b, radius, q):
            h = max(abs(x) for x in t)
            if h < min_height:
                continue
            if metric == "chart":
                num = max(abs(x * pj - p * q) for x, p in zip(t, target))
            else:
                num = minor_numerator(target, t)
            if num == 0:
                continue
            cur = best.get(h)
            if cur is None or num < cur[0] or (num == cur[0] and _sign_normalized(t) < cur[1]):
                best[h] = (num, _sign_normalized(t))
        for h, (num, coords) in best.items():
            out.append((coords, num, q * pj if metric == "chart" else hp * h, h))
    return out


def _near_setup(target: ProjPoint, b: int, radius: Optional[Fraction]) -> tuple[Coords, int, Fraction]:
    r = Fraction(settings.radius if radius is None else radius)
    if b < 1 or not 0 < r < 1:
        raise InvalidConfigurationError("need B >= 1 and 0 < radius < 1", max_height=b, radius=str(r))
    chart = near_chart(target)
    coords = target.coords
    lead = coords if coords[chart] > 0 else tuple(-x for x in coords)
    return lead, chart, r


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def enumerate_box(bounds: Sequence[int]) -> list[ProjPoint]:
    """Points with |x_i| <= bounds[i] for every coordinate."""
    bounds = tuple(int(b) for b in bounds)
    if len(bounds) < 2 or min(bounds) < 0:
        raise InvalidConfigurationError("a box needs >= 2 nonnegative bounds", bounds=list(bounds))
    blocks = [[0]] + _chunks(list(range(1, bounds[0] + 1)), settings.workers)
    coords = _run(_box_block, blocks, bounds)
    logger.debug(f"box {list(bounds)} holds {len(coords)} points")
    return [ProjPoint(c) for c in coords]


def enumerate_projective(n: int, b: int, bounds: Optional[Sequence[int]] = None) -> list[ProjPoint]:
    """All points of P^n with height <= b, optionally cut down to a box."""
    if n < 1 or b < 1:
        raise InvalidConfigurationError("need n >= 1 and B >= 1", n=n, max_height=b)
    if bounds is None:
        box = (b,) * (n + 1)
    else:
        if len(bounds) != n + 1:
            raise InvalidConfigurationError("one bound per coordinate", n=n, bounds=list(bounds))
        box = tuple(min(int(x), b) for x in bounds)
    return enumerate_box(box)


def enumerate_p1(b: int) -> list[ProjPoint]:
    return enumerate_projective(1, b)


def enumerate_p2(b: int) -> list[ProjPoint]:
    return enumerate_projective(2, b)


def near_chart(target: ProjPoint) -> int:
    """Index of the largest coordinate, first one on ties."""
    coords = target.coords
    return max(range(len(coords)), key=lambda i: (abs(coords[i]), -i))


def enumerate_near(target: ProjPoint, b: int, radius: Optional[Fraction] = None) -> list[ProjPoint]:
    """
    Points of height <= b in the chart window of ``target``.

    The chart is the target's largest coordinate. For chart value q each
    other coordinate runs over q * (p_i / p_chart +- radius).
    """
    lead, chart, r = _near_setup(target, b, radius)
    blocks = _chunks(list(range(1, b + 1)), settings.workers)
    found = _run(_near_block, blocks, lead, chart, b, r)
    logger.debug(f"{len(found)} points of height <= {b} within {r} of {target}")
    return [ProjPoint(c) for c in found]


def near_frontier(
    target: ProjPoint,
    b: int,
    radius: Optional[Fraction] = None,
    metric: str = "chordal",
    min_height: int = 2,
) -> Frontier:
    """
    Record frontier of the near window without materializing the window.

    Same records as measuring every point of enumerate_near whose height is
    at least ``min_height``; ``metric`` is "chordal" (distance) or "chart"
    (affine_chart_distance in the chart of the largest coordinate).
    """
    if metric not in NEAR_METRICS:
        raise InvalidConfigurationError(f"unknown metric {metric!r}", known=list(NEAR_METRICS))
    lead, chart, r = _near_setup(target, b, radius)
    blocks = _chunks(list(range(1, b + 1)), settings.workers)
    rows = _run(_survivor_block, blocks, lead, chart, b, r, metric, min_height)
    front = Frontier.of(RecordPoint(ProjPoint(c), Fraction(num, den), h) for c, num, den, h in rows)
    logger.debug(f"{len(rows)} window survivors, {len(front)} {metric} records near {target} at B = {b}")
    return front


def curve_images_near(
    curve: ParamCurve,
    t0: ProjPoint,
    b: int,
    radius: Optional[Fraction] = None,
) -> list[ProjPoint]:
    """Images of the parameters of height <= b near t0, t0 itself left out."""
    params = [t for t in enumerate_near(t0, b, radius) if t != t0]
    return [evaluate(curve, t) for t in params]


# ---------------------------------------------------------------------------
# Counting
# ---------------------------------------------------------------------------

def mobius(d: int) -> int:
    if d == 1:
        return 1
    exps = factorint(d)
    if any(e > 1 for e in exps.values()):
        return 0
    return -1 if len(exps) % 2 else 1


def counting_function(n: int, b: int) -> int:
    """
    #{P in P^n(Q) : H(P) <= b} in closed form.

    Primitive vectors in [-b, b]^(n+1) come from Mobius inversion over the
    common divisor; each point has two primitive representatives.
    """
    if n < 1 or b < 1:
        raise InvalidConfigurationError("need n >= 1 and B >= 1", n=n, max_height=b)
    total = sum(mobius(d) * ((2 * (b // d) + 1) ** (n + 1) - 1) for d in range(1, b + 1))
    return total // 2


def count_by_enumeration(n: int, b: int) -> int:
    return len(enumerate_projective(n, b))
