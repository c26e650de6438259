# rapprox/geometry/surfaces.py
"""
Height-carrying models of the surfaces: blowups of P^2 embedded by linear
systems of plane curves, Hirzebruch surfaces in Cox coordinates, and
products of projective spaces.
"""
from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Optional, Sequence, Union

import sympy
from sympy import Matrix

from rapprox.core.errors import (
    BaseLocusError,
    DimensionMismatchError,
    InvalidConfigurationError,
    SectionlessClassError,
)
from rapprox.geometry.projective import ProjPoint, distance, gamma, height, normalize
from rapprox.lattice.nslattice import DivisorClass

logger = logging.getLogger("surfaces")

_X, _Y, _Z = sympy.symbols("x y z")


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def monomials(a: int) -> list[tuple[int, int, int]]:
    """Exponents of degree-a monomials, descending lex: x^2, xy, xz, y^2, yz, z^2."""
    return [(i, j, a - i - j) for i in range(a, -1, -1) for j in range(a - i, -1, -1)]


def _falling(e: int, k: int) -> int:
    out = 1
    for r in range(k):
        out *= e - r
    return out


def _derivative_row(a: int, point: Sequence[int], alpha: tuple[int, int, int]) -> list[int]:
    """Coefficients of d^alpha(sum c_m x^m) evaluated at point, per monomial."""
    row = []
    for e in monomials(a):
        c = 1
        for ei, ai, pi in zip(e, alpha, point):
            if ai > ei:
                c = 0
                break
            c *= _falling(ei, ai) * pi ** (ei - ai)
        row.append(c)
    return row


def _primitive(vec: Sequence) -> tuple[int, ...]:
    fracs = []
    for v in vec:
        r = sympy.Rational(v)
        fracs.append(Fraction(int(r.p), int(r.q)))
    den = math.lcm(*(f.denominator for f in fracs))
    ints = [int(f * den) for f in fracs]
    g = math.gcd(*ints) or 1
    first = next((x for x in ints if x), 1)
    if first < 0:
        g = -g
    return tuple(x // g for x in ints)


def _eval_form(a: int, coeffs: Sequence[int], q: Sequence[int]) -> int:
    x, y, z = q
    return sum(c * x ** i * y ** j * z ** k for c, (i, j, k) in zip(coeffs, monomials(a)) if c)


# ---------------------------------------------------------------------------
# Linear systems on P^2
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearSystem:
    degree: int
    base_points: tuple[tuple[ProjPoint, int], ...]
    forms: tuple[tuple[int, ...], ...]
    expected_dimension: int = field(default=0, compare=False)

    @property
    def dimension(self) -> int:
        return len(self.forms)

    @property
    def is_empty(self) -> bool:
        return not self.forms

    @property
    def non_generic(self) -> bool:
        return self.dimension != max(self.expected_dimension, 0)

    @cached_property
    def condition_matrix(self) -> Matrix:
        return condition_matrix(self.degree, self.base_points)

    def form_expr(self, k: int) -> sympy.Expr:
        return sum(c * _X ** i * _Y ** j * _Z ** l for c, (i, j, l) in zip(self.forms[k], monomials(self.degree)))

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "base_points": [{"point": list(p.coords), "mult": b} for p, b in self.base_points],
            "forms": [str(self.form_expr(k)) for k in range(self.dimension)],
            "expected_dimension": self.expected_dimension,
            "non_generic": self.non_generic,
        }


def _check_base(a: int, base_points: Sequence[tuple[ProjPoint, int]]) -> tuple[tuple[ProjPoint, int], ...]:
    if a < 1:
        raise InvalidConfigurationError("degree must be >= 1", degree=a)
    pts = tuple((p, int(b)) for p, b in base_points)
    for p, b in pts:
        if p.dim != 2:
            raise DimensionMismatchError("base points live in P^2", point=list(p.coords))
        if b < 1:
            raise InvalidConfigurationError("multiplicities must be >= 1", point=list(p.coords), mult=b)
    if len({p for p, _ in pts}) != len(pts):
        raise InvalidConfigurationError("base points must be distinct")
    return pts


def condition_matrix(a: int, base_points: Sequence[tuple[ProjPoint, int]]) -> Matrix:
    """One row per partial derivative of order < b_i at each base point."""
    rows = []
    for p, b in base_points:
        for order in range(b):
            for i in range(order, -1, -1):
                for j in range(order - i, -1, -1):
                    rows.append(_derivative_row(a, p.coords, (i, j, order - i - j)))
    if not rows:
        return Matrix.zeros(0, len(monomials(a)))
    return Matrix(rows)


def expected_dimension(a: int, base_points: Sequence[tuple[ProjPoint, int]]) -> int:
    return (a + 1) * (a + 2) // 2 - sum(b * (b + 1) // 2 for _, b in base_points)


def linear_system_basis(a: int, base_points: Sequence[tuple[ProjPoint, int]]) -> LinearSystem:
    pts = _check_base(a, base_points)
    cond = condition_matrix(a, pts)
    n = len(monomials(a))
    if cond.rows == 0:
        kernel = [Matrix.eye(n).col(k) for k in range(n)]
    else:
        kernel = cond.nullspace()
    forms = tuple(_primitive(list(v)) for v in kernel)
    expected = expected_dimension(a, pts)
    system = LinearSystem(a, pts, forms, expected)
    if system.is_empty:
        logger.warning(f"degree {a} system through {len(pts)} points is empty")
    elif system.non_generic:
        logger.warning(f"degree {a} system has dimension {system.dimension}, expected {max(expected, 0)}")
    else:
        logger.debug(f"degree {a} system of dimension {system.dimension}")
    return system


def from_forms(
    a: int,
    forms: Sequence[Union[str, Sequence[int]]],
    base_points: Sequence[tuple[ProjPoint, int]] = (),
) -> LinearSystem:
    """User-supplied section basis, e.g. ("x*y-x*z", "y*z-x*z")."""
    pts = _check_base(a, base_points)
    mons = monomials(a)
    rows = []
    for f in forms:
        if isinstance(f, str):
            poly = sympy.Poly(sympy.sympify(f, locals={"x": _X, "y": _Y, "z": _Z}), _X, _Y, _Z)
            if not poly.is_zero and (not poly.is_homogeneous or poly.total_degree() != a):
                raise InvalidConfigurationError(f"{f} is not a form of degree {a}")
            coeffs = dict(poly.terms())
            rows.append(tuple(int(coeffs.get(m, 0)) for m in mons))
        else:
            if len(f) != len(mons):
                raise InvalidConfigurationError("coefficient vector has the wrong length", degree=a)
            rows.append(tuple(int(c) for c in f))
    if rows and Matrix(rows).rank() != len(rows):
        raise InvalidConfigurationError("forms are linearly dependent")
    cond = condition_matrix(a, pts)
    for r in rows:
        if cond.rows and any(cond * Matrix(r)):
            raise InvalidConfigurationError("a form does not vanish to the required order", form=list(r))
    return LinearSystem(a, pts, tuple(rows), expected_dimension(a, pts))


def embed_via_system(q: ProjPoint, system: LinearSystem) -> ProjPoint:
    if q.dim != 2:
        raise DimensionMismatchError("systems act on P^2", point=list(q.coords))
    values = [_eval_form(system.degree, f, q.coords) for f in system.forms]
    if not any(values):
        raise BaseLocusError("point lies in the base locus", point=list(q.coords))
    return normalize(values)


def height_via_system(q: ProjPoint, system: LinearSystem) -> int:
    return height(embed_via_system(q, system))


def gamma_agreement(
    p: ProjPoint,
    points: Sequence[ProjPoint],
    system: LinearSystem,
    below: Optional[Fraction] = None,
) -> list[tuple[ProjPoint, float, float]]:
    """
    (Q, gamma in P^2, gamma in the image / degree) for each Q off the base locus.

    Heights through a degree-a system grow like a-th powers, so image gammas
    are divided by a. ``below`` keeps only Q with distance(P, Q) < below.
    """
    target = embed_via_system(p, system)
    out = []
    for q in points:
        d = distance(p, q)
        if not 0 < d < (1 if below is None else below):
            continue
        try:
            image = embed_via_system(q, system)
        except BaseLocusError:
            continue
        if not 0 < distance(target, image) < 1:
            continue
        out.append((q, gamma(p, q), gamma(target, image) / system.degree))
    return out


def max_gamma_gap(rows: Sequence[tuple[ProjPoint, float, float]]) -> Optional[float]:
    return max((abs(g - h) for _, g, h in rows), default=None)


def collinear(p: ProjPoint, q: ProjPoint, r: ProjPoint) -> bool:
    return Matrix([p.coords, q.coords, r.coords]).det() == 0


def in_general_position(points: Sequence[ProjPoint]) -> bool:
    """Distinct, with no three on a line."""
    if len(set(points)) != len(points):
        return False
    return not any(collinear(*trio) for trio in combinations(points, 3))


def random_configuration(rng: random.Random, count: int, bound: int = 9) -> list[ProjPoint]:
    """``count`` points of P^2 in general position with coordinates in [-bound, bound]."""
    while True:
        pts = []
        while len(pts) < count:
            v = [rng.randint(-bound, bound) for _ in range(3)]
            if any(v):
                pts.append(normalize(v))
        if in_general_position(pts):
            return pts


# ---------------------------------------------------------------------------
# Hirzebruch surfaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HirzebruchPoint:
    n: int
    x: tuple[int, int]
    y: tuple[int, int]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InvalidConfigurationError("n must be >= 0", n=self.n)
        for pair in (self.x, self.y):
            if len(pair) != 2 or not any(pair) or math.gcd(*pair) != 1:
                raise InvalidConfigurationError("Cox coordinates must be primitive pairs", pair=list(pair))
            if next(c for c in pair if c) < 0:
                raise InvalidConfigurationError("Cox coordinates must be sign-normalized", pair=list(pair))

    @classmethod
    def make(cls, n: int, x: Sequence[int], y: Sequence[int]) -> "HirzebruchPoint":
        return cls(n, normalize(x).coords, normalize(y).coords)


def _class_degrees(cls: Union[DivisorClass, tuple[int, int]]) -> tuple[int, int]:
    """(a, b) for a*F + b*S."""
    if isinstance(cls, DivisorClass):
        lat = cls.lattice
        return int(cls.coeffs[lat.index("F")]), int(cls.coeffs[lat.index("S")])
    a, b = cls
    return int(a), int(b)


def cox_monomials(n: int, a: int, b: int) -> list[tuple[int, int, int, int]]:
    """Exponents (i, j, k, l) of x1^i x2^j y1^k y2^l with i+j+n*l = a, k+l = b."""
    out = []
    for l in range(b, -1, -1):
        rest = a - n * l
        if rest < 0:
            continue
        for i in range(rest, -1, -1):
            out.append((i, rest - i, b - l, l))
    return out


def cox_monomial_values(point: HirzebruchPoint, cls) -> list[int]:
    a, b = _class_degrees(cls)
    mons = cox_monomials(point.n, a, b)
    if not mons:
        raise SectionlessClassError(f"{a}F+{b}S has no sections on H_{point.n}", a=a, b=b)
    (x1, x2), (y1, y2) = point.x, point.y
    return [x1 ** i * x2 ** j * y1 ** k * y2 ** l for i, j, k, l in mons]


def cox_height(point: HirzebruchPoint, cls) -> int:
    values = cox_monomial_values(point, cls)
    g = math.gcd(*values)
    if g == 0:
        raise BaseLocusError("every section vanishes at the point", x=list(point.x), y=list(point.y))
    return max(abs(v) for v in values) // g


def cox_products_contain(point: HirzebruchPoint, first, second) -> bool:
    """Every section value of first + second is a product of a first value and a second value."""
    a1, b1 = _class_degrees(first)
    a2, b2 = _class_degrees(second)
    products = {u * v for u in cox_monomial_values(point, (a1, b1)) for v in cox_monomial_values(point, (a2, b2))}
    return set(cox_monomial_values(point, (a1 + a2, b1 + b2))) <= products


# ---------------------------------------------------------------------------
# Products
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProductModel:
    dims: tuple[int, int]
    bidegree: tuple[int, int] = (1, 1)

    def __post_init__(self) -> None:
        a, b = self.bidegree
        if a < 0 or b < 0 or (a == 0 and b == 0):
            raise InvalidConfigurationError("bidegree must be nonnegative and nonzero", bidegree=list(self.bidegree))

    def check(self, pair: tuple[ProjPoint, ProjPoint]) -> None:
        if (pair[0].dim, pair[1].dim) != tuple(self.dims):
            raise DimensionMismatchError("point does not match the factor dimensions", dims=list(self.dims))

    def height(self, pair: tuple[ProjPoint, ProjPoint]) -> int:
        self.check(pair)
        a, b = self.bidegree
        return height(pair[0]) ** a * height(pair[1]) ** b

    def distance(self, p: tuple[ProjPoint, ProjPoint], q: tuple[ProjPoint, ProjPoint]) -> Fraction:
        self.check(p)
        self.check(q)
        return max(distance(p[0], q[0]), distance(p[1], q[1]))


def product_height_and_distance(
    target: tuple[ProjPoint, ProjPoint],
    point: tuple[ProjPoint, ProjPoint],
    bidegree: tuple[int, int] = (1, 1),
) -> tuple[int, Fraction]:
    model = ProductModel((target[0].dim, target[1].dim), tuple(bidegree))
    return model.height(point), model.distance(target, point)
