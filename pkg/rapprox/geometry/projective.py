# rapprox/geometry/projective.py
"""
Rational points of projective space over Q.

Points are stored by their canonical primitive integer representative
(gcd 1, first nonzero coordinate positive). Heights are the max absolute
coordinate; the distance is the minor-ratio chordal formula, kept exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from rapprox.core.errors import (
    DimensionMismatchError,
    InvalidPointError,
    SamePointError,
    ZeroChartError,
)


@dataclass(frozen=True, slots=True)
class ProjPoint:
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        c = self.coords
        if len(c) < 2:
            raise InvalidPointError("a projective point needs at least two coordinates", coords=list(c))
        if not any(c):
            raise InvalidPointError("all coordinates are zero", coords=list(c))
        if math.gcd(*c) != 1:
            raise InvalidPointError("coordinates are not primitive", coords=list(c))
        if _first_nonzero(c) < 0:
            raise InvalidPointError("first nonzero coordinate must be positive", coords=list(c))

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i: int) -> int:
        return self.coords[i]

    def __str__(self) -> str:
        return format_point(self)


@dataclass(frozen=True, slots=True)
class LineInP2:
    dual: ProjPoint

    def passes_through(self, p: ProjPoint) -> bool:
        return sum(a * b for a, b in zip(self.dual.coords, p.coords)) == 0

    @property
    def height(self) -> int:
        return height(self.dual)


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def _first_nonzero(c: Sequence[int]) -> int:
    for x in c:
        if x:
            return x
    return 0


def _check_same_dim(p: ProjPoint, q: ProjPoint) -> None:
    if len(p.coords) != len(q.coords):
        raise DimensionMismatchError(f"P^{p.dim} vs P^{q.dim}", left=p.dim, right=q.dim)


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def normalize(raw: Iterable[int]) -> ProjPoint:
    c = [int(x) for x in raw]
    if not any(c):
        raise InvalidPointError("all coordinates are zero", coords=c)
    g = math.gcd(*c)
    if _first_nonzero(c) < 0:
        g = -g
    return ProjPoint(tuple(x // g for x in c))


def height(p: ProjPoint) -> int:
    return max(abs(x) for x in p.coords)


def minor_numerator(x: Sequence[int], y: Sequence[int]) -> int:
    """max_{i<j} |x_i y_j - x_j y_i| on raw coordinate vectors."""
    return max(abs(x[i] * y[j] - x[j] * y[i]) for i, j in combinations(range(len(x)), 2))


def max_minor(p: ProjPoint, q: ProjPoint) -> int:
    _check_same_dim(p, q)
    return minor_numerator(p.coords, q.coords)


def distance(p: ProjPoint, q: ProjPoint, clamp: bool = True) -> Fraction:
    """
    max_{i<j} |x_i y_j - x_j y_i| / (H(P) H(Q)).

    The result is clamped to 1 unless ``clamp`` is False. The raw ratio
    reaches 2 for far-apart pairs such as [1,1] and [1,-1]; comparisons with
    other metrics (affine_chart_distance) should ask for the raw value.
    """
    d = Fraction(max_minor(p, q), height(p) * height(q))
    return min(d, Fraction(1)) if clamp else d


def affine_chart_distance(p: ProjPoint, q: ProjPoint, chart: int) -> Fraction:
    _check_same_dim(p, q)
    if p.coords[chart] == 0 or q.coords[chart] == 0:
        raise ZeroChartError(f"chart coordinate {chart} vanishes", chart=chart, p=list(p.coords), q=list(q.coords))
    pc, qc = p.coords[chart], q.coords[chart]
    return max(abs(Fraction(a, pc) - Fraction(b, qc)) for a, b in zip(p.coords, q.coords))


def line_through(p: ProjPoint, q: ProjPoint) -> LineInP2:
    _check_same_dim(p, q)
    if p.dim != 2:
        raise DimensionMismatchError("lines are only built in P^2", dim=p.dim)
    if p == q:
        raise SamePointError("a line needs two distinct points", point=list(p.coords))
    return LineInP2(normalize(cross(p, q)))


def gamma(p: ProjPoint, q: ProjPoint, h: int | None = None) -> float:
    """log H(Q) / -log dist(P, Q); reporting only."""
    d = distance(p, q)
    if d == 0 or d >= 1:
        raise ValueError("gamma needs 0 < dist < 1")
    hq = height(q) if h is None else h
    return math.log(hq) / -math.log(d)


def permute(p: ProjPoint, perm: Sequence[int]) -> ProjPoint:
    if sorted(perm) != list(range(len(p.coords))):
        raise InvalidPointError("not a permutation of the coordinates", perm=list(perm))
    return normalize(p.coords[i] for i in perm)


def format_point(p: ProjPoint) -> str:
    return ":".join(str(x) for x in p.coords)


def parse_point(text: str) -> ProjPoint:
    try:
        raw = [int(x) for x in text.strip().strip("[]").replace(",", ":").split(":")]
    except ValueError:
        raise InvalidPointError(f"cannot parse point {text!r}", text=text)
    return normalize(raw)


def cross(p: ProjPoint, q: ProjPoint) -> tuple[int, int, int]:
    """Raw cross product of two points of P^2; zero iff P = Q."""
    _check_same_dim(p, q)
    if p.dim != 2:
        raise DimensionMismatchError("cross products are only taken in P^2", dim=p.dim)
    (a, b, c), (d, e, f) = p.coords, q.coords
    return (b * f - c * e, c * d - a * f, a * e - b * d)


def plucker_height(line: LineInP2) -> int:
    return height(line.dual)
