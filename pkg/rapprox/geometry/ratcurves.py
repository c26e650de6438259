# rapprox/geometry/ratcurves.py
"""
Parametrized rational curves f = (f_0 : ... : f_n) with f_i homogeneous in (s, t).

Components are kept as dense coefficient rows, coefficient k belonging to
s^(d-k) t^k. sympy carries the polynomial algebra (coprimality, branch
orders); evaluation at integer parameters stays in Python integers.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from typing import Iterable, Optional, Sequence

import sympy
from sympy import Poly

from rapprox.core.errors import InvalidCurveError, InvalidPointError
from rapprox.geometry.projective import ProjPoint, height, normalize

logger = logging.getLogger("curves")

_S, _T, _U = sympy.symbols("s t u")


@dataclass(frozen=True)
class ParamCurve:
    components: tuple[tuple[int, ...], ...]
    label: str = ""

    def __post_init__(self) -> None:
        rows = self.components
        if len(rows) < 2:
            raise InvalidCurveError("a curve needs at least two components", label=self.label)
        widths = {len(r) for r in rows}
        if len(widths) != 1 or min(widths) < 2:
            raise InvalidCurveError("components must share one degree d >= 1", label=self.label)
        if not any(any(r) for r in rows):
            raise InvalidCurveError("all components vanish", label=self.label)
        common = reduce(sympy.gcd, [p for p in self.polys if not p.is_zero])
        if common.total_degree() > 0:
            raise InvalidCurveError(
                f"components share the factor {common.as_expr()}", label=self.label
            )

    @property
    def degree(self) -> int:
        return len(self.components[0]) - 1

    @property
    def ambient_dim(self) -> int:
        return len(self.components) - 1

    @cached_property
    def polys(self) -> list[Poly]:
        d = len(self.components[0]) - 1
        out = []
        for row in self.components:
            expr = sum(c * _S ** (d - k) * _T ** k for k, c in enumerate(row))
            out.append(Poly(expr, _S, _T))
        return out


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def from_coefficients(rows: Iterable[Sequence[int]], label: str = "") -> ParamCurve:
    return ParamCurve(tuple(tuple(int(c) for c in r) for r in rows), label)


def from_expressions(exprs: Sequence[str], label: str = "") -> ParamCurve:
    """Build a curve from strings in s and t, e.g. ("s*t**2", "t**3", "s**3")."""
    polys = [Poly(sympy.sympify(e, locals={"s": _S, "t": _T}), _S, _T) for e in exprs]
    degrees = {p.total_degree() for p in polys if not p.is_zero}
    if len(degrees) != 1:
        raise InvalidCurveError("components are not of one common degree", label=label)
    d = degrees.pop()
    rows = []
    for p in polys:
        if not p.is_zero and not p.is_homogeneous:
            raise InvalidCurveError(f"{p.as_expr()} is not homogeneous", label=label)
        row = [0] * (d + 1)
        for (i, j), c in p.terms():
            if not c.is_integer:
                raise InvalidCurveError("coefficients must be integers", label=label)
            row[j] = int(c)
        rows.append(tuple(row))
    return ParamCurve(tuple(rows), label)


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def complement(t0: ProjPoint) -> tuple[int, int]:
    """A primitive (x, y), sign-normalized, with a*y - b*x = +-1 for t0 = [a, b]."""
    if t0.dim != 1:
        raise InvalidPointError("parameters live in P^1", coords=list(t0.coords))
    a, b = t0.coords
    g, p, q = _egcd(a, b)
    if g < 0:
        p, q = -p, -q
    return tuple(normalize((-q, p)).coords)


def _eval_row(row: Sequence[int], s: int, t: int) -> int:
    d = len(row) - 1
    return sum(c * s ** (d - k) * t ** k for k, c in enumerate(row) if c)


def _vanishing_order(p: Poly) -> Optional[int]:
    if p.is_zero:
        return None
    return min(m[0] for m in p.monoms())


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def evaluate(curve: ParamCurve, t: ProjPoint) -> ProjPoint:
    if t.dim != 1:
        raise InvalidPointError("parameters live in P^1", coords=list(t.coords))
    s_, t_ = t.coords
    return normalize(_eval_row(row, s_, t_) for row in curve.components)


def degree(curve: ParamCurve) -> int:
    return curve.degree


def branch_multiplicity(curve: ParamCurve, t0: ProjPoint) -> int:
    p = evaluate(curve, t0)
    j = max(range(len(p.coords)), key=lambda i: (abs(p.coords[i]), -i))
    a, b = t0.coords
    x, y = complement(t0)
    local = [
        Poly(f.as_expr().subs({_S: a + x * _U, _T: b + y * _U}, simultaneous=True), _U)
        for f in curve.polys
    ]
    orders = []
    for i, fi in enumerate(local):
        if i == j:
            continue
        g = fi * p.coords[j] - local[j] * p.coords[i]
        o = _vanishing_order(g)
        if o is not None:
            orders.append(o)
    if not orders:
        raise InvalidCurveError("curve is constant near the parameter", label=curve.label)
    m = min(orders)
    logger.debug(f"branch multiplicity of {curve.label or 'curve'} at {t0}: {m}")
    return m


def branch_multiplicity_max(curve: ParamCurve, preimages: Sequence[ProjPoint]) -> int:
    images = {evaluate(curve, t) for t in preimages}
    if len(images) != 1:
        raise InvalidPointError("preimage parameters map to different points")
    return max(branch_multiplicity(curve, t) for t in preimages)


def alpha_along_curve(curve: ParamCurve, t0: ProjPoint, e: int = 1) -> Fraction:
    if e < 1:
        raise ValueError("embedding degree must be >= 1")
    return Fraction(e * curve.degree, branch_multiplicity(curve, t0))


def best_parameters(t0: ProjPoint, count: int) -> list[ProjPoint]:
    """Parameters j*t0 + u, j = 1..count, at parameter distance 1/H."""
    if count < 1:
        raise ValueError("count must be >= 1")
    a, b = t0.coords
    x, y = complement(t0)
    return [normalize((j * a + x, j * b + y)) for j in range(1, count + 1)]


def best_sequence(curve: ParamCurve, t0: ProjPoint, count: int) -> list[ProjPoint]:
    return [evaluate(curve, p) for p in best_parameters(t0, count)]


# ---------------------------------------------------------------------------
# Named curves
# ---------------------------------------------------------------------------

CURVES: dict[str, tuple[tuple[str, ...], tuple[int, int]]] = {
    "line": (("s", "t"), (0, 1)),
    "cusp": (("s*t**2", "t**3", "s**3"), (1, 0)),
    "twisted_cubic": (("s**3", "s**2*t", "s*t**2", "t**3"), (0, 1)),
    "quintic_cusp": (("s**2*t**3", "t**5", "s**5"), (1, 0)),
}


def named_curve(name: str) -> tuple[ParamCurve, ProjPoint]:
    try:
        exprs, t0 = CURVES[name]
    except KeyError:
        raise InvalidCurveError(f"unknown curve {name!r}", known=sorted(CURVES))
    return from_expressions(exprs, label=name), ProjPoint(t0)


def image_height(curve: ParamCurve, t: ProjPoint) -> int:
    return height(evaluate(curve, t))
