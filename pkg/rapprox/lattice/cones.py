# rapprox/lattice/cones.py
"""
Exact polyhedral cones in a Neron-Severi lattice.

Cones are stored by generators in lattice coordinates. Inequality
descriptions, duals and extremal rays come from PPL polyhedra. Rays and
normals are reduced against the lineality (or equality) basis so every
description is canonical.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

import ppl
from joblib import Parallel, delayed
from sympy import Matrix

from rapprox.core.config import settings
from rapprox.core.errors import (
    DegenerateConeError,
    LatticeMismatchError,
    NotFullDimensionalError,
    PreconditionError,
    RankCapError,
)
from rapprox.lattice.nslattice import DivisorClass, NSLattice, intersect

logger = logging.getLogger("cones")

Vector = tuple[int, ...]


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _prim(v: Sequence[int]) -> Vector:
    g = math.gcd(*v)
    return tuple(v) if g in (0, 1) else tuple(x // g for x in v)


def _neg(v: Sequence[int]) -> Vector:
    return tuple(-x for x in v)


def _comb(s: int, v: Sequence[int], t: int, w: Sequence[int]) -> Vector:
    return _prim([s * x + t * y for x, y in zip(v, w)])


def _canonical_lines(lines: Sequence[Vector]) -> list[Vector]:
    if not lines:
        return []
    rref, _ = Matrix(lines).rref()
    out = []
    for i in range(rref.rows):
        row = list(rref.row(i))
        if not any(row):
            continue
        den = math.lcm(*(int(x.q) for x in row))
        out.append(_prim([int(x * den) for x in row]))
    return out


def _reduce(vectors: Iterable[Vector], lines: Sequence[Vector]) -> tuple[list[Vector], list[Vector]]:
    """Vectors with every lineality pivot coordinate cleared, plus the echelon basis."""
    basis = _canonical_lines(lines)
    out = set()
    for v in vectors:
        for l in basis:
            p = next(i for i, x in enumerate(l) if x)
            if v[p]:
                # leading entries of the echelon basis are positive
                v = _comb(l[p], v, -v[p], l)
        if any(v):
            out.add(_prim(v))
    return sorted(out), basis


def _pairing_vector(lattice: NSLattice, coeffs: Sequence[int]) -> Vector:
    """w with w . y = x . y under the lattice pairing."""
    g = lattice.gram
    return tuple(sum(coeffs[i] * g[i][j] for i in range(lattice.rank)) for j in range(lattice.rank))


def _integral(c: DivisorClass) -> Vector:
    return tuple(c.primitive().coeffs)


def _check_rank(lattice: NSLattice) -> None:
    if lattice.rank > settings.rank_cap:
        raise RankCapError(f"rank {lattice.rank} exceeds the cap {settings.rank_cap}", rank=lattice.rank)


# ---------------------------------------------------------------------------
# PPL conversions
# ---------------------------------------------------------------------------

def _expr(v: Sequence[int]) -> ppl.Linear_Expression:
    return ppl.Linear_Expression([int(x) for x in v], 0)


def _coeffs(obj, dim: int) -> Vector:
    return tuple(int(obj.coefficient(ppl.Variable(i))) for i in range(dim))


def _from_constraints(constraints: Iterable[Sequence[int]], dim: int) -> ppl.C_Polyhedron:
    poly = ppl.C_Polyhedron(dim, "universe")
    for a in constraints:
        if any(a):
            poly.add_constraint(_expr(a) >= 0)
    return poly


def _from_generators(generators: Iterable[Sequence[int]], dim: int) -> ppl.C_Polyhedron:
    poly = ppl.C_Polyhedron(dim, "empty")
    poly.add_generator(ppl.point())
    for g in generators:
        poly.add_generator(ppl.ray(_expr(g)))
    return poly


def _split_generators(poly: ppl.C_Polyhedron, dim: int) -> tuple[list[Vector], list[Vector]]:
    rays, lines = [], []
    for gen in poly.minimized_generators():
        if gen.is_line():
            lines.append(_prim(_coeffs(gen, dim)))
        elif gen.is_ray():
            rays.append(_prim(_coeffs(gen, dim)))
    return _reduce(rays, lines)


def double_description(constraints: Sequence[Sequence[int]], dim: int) -> tuple[list[Vector], list[Vector]]:
    """
    Extreme rays and a lineality basis of {x : a . x >= 0 for every a}.

    Rays are primitive, sorted and zero on the lineality pivots; the
    lineality basis is in reduced echelon form.
    """
    return _split_generators(_from_constraints(constraints, dim), dim)


def inequalities(generators: Sequence[Sequence[int]], dim: int) -> tuple[list[Vector], list[Vector]]:
    """(facet normals, equation basis) of the cone spanned by the generators."""
    normals, eqs = [], []
    for cstr in _from_generators(generators, dim).minimized_constraints():
        h = _prim(_coeffs(cstr, dim))
        if not any(h):
            continue
        (eqs if cstr.is_equality() else normals).append(h)
    return _reduce(normals, eqs)


# ---------------------------------------------------------------------------
# Cone
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Cone:
    lattice: NSLattice
    generators: tuple[Vector, ...]

    def __post_init__(self) -> None:
        for g in self.generators:
            if len(g) != self.lattice.rank:
                raise LatticeMismatchError("generator length does not match the lattice rank")
            if not any(g):
                raise DegenerateConeError("zero generator")
            if math.gcd(*g) != 1:
                raise DegenerateConeError("generators must be primitive", generator=list(g))
        if list(self.generators) != sorted(set(self.generators)):
            raise DegenerateConeError("generators must be sorted and distinct")

    @classmethod
    def from_vectors(cls, lattice: NSLattice, vectors: Sequence[Sequence[int]]) -> "Cone":
        gens = {_prim([int(x) for x in v]) for v in vectors if any(v)}
        return cls(lattice, tuple(sorted(gens)))

    @classmethod
    def from_classes(cls, lattice: NSLattice, classes: Sequence[DivisorClass]) -> "Cone":
        for c in classes:
            if c.lattice != lattice:
                raise LatticeMismatchError("generator belongs to another lattice")
        return cls.from_vectors(lattice, [_integral(c) for c in classes if not c.is_zero])

    @property
    def rays(self) -> list[DivisorClass]:
        return [self.lattice.cls(g) for g in self.generators]

    @cached_property
    def dimension(self) -> int:
        if not self.generators:
            return 0
        return Matrix(self.generators).rank()

    @property
    def is_full_dimensional(self) -> bool:
        return self.dimension == self.lattice.rank

    @cached_property
    def hrep(self) -> tuple[list[Vector], list[Vector]]:
        """(facet normals, equations) in plain coordinates."""
        _check_rank(self.lattice)
        return inequalities(self.generators, self.lattice.rank)

    def __len__(self) -> int:
        return len(self.generators)

    def to_dict(self) -> dict:
        return {"lattice": self.lattice.to_dict(), "generators": [list(g) for g in self.generators]}


@dataclass(frozen=True)
class Cell:
    index: int
    candidate: DivisorClass
    cone: Cone


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def _same_lattice(a: NSLattice, b: NSLattice) -> None:
    if a is not b and a != b:
        raise LatticeMismatchError("cones live in different lattices")


def _from_dd(lattice: NSLattice, rays: list[Vector], lines: list[Vector]) -> Cone:
    return Cone.from_vectors(lattice, rays + lines + [_neg(l) for l in lines])


def facets(c: Cone) -> list[Vector]:
    """Inequality normals h in plain coordinates, h . x >= 0 on the cone; equations come in both signs."""
    normals, eqs = c.hrep
    return normals + eqs + [_neg(e) for e in eqs]


def dual_cone(c: Cone) -> Cone:
    if not c.generators:
        raise DegenerateConeError("zero-dimensional cone has no proper dual")
    lat = c.lattice
    _check_rank(lat)
    constraints = [_pairing_vector(lat, g) for g in c.generators]
    rays, lines = double_description(constraints, lat.rank)
    out = _from_dd(lat, rays, lines)
    logger.debug(f"dual of a {len(c)}-generator cone has {len(out)} generators")
    return out


def extremal_rays(c: Cone) -> Cone:
    """The same cone on its irredundant generators."""
    _check_rank(c.lattice)
    rays, lines = _split_generators(_from_generators(c.generators, c.lattice.rank), c.lattice.rank)
    return _from_dd(c.lattice, rays, lines)


def farkas_certificate(c: Cone, d: DivisorClass) -> Optional[DivisorClass]:
    """A class y with y . x >= 0 on every generator and y . d < 0, or None."""
    _same_lattice(c.lattice, d.lattice)
    if d.is_zero:
        return None
    v = _integral(d)
    normals, eqs = c.hrep
    bad = next((h for h in normals if _dot(h, v) < 0), None)
    if bad is None:
        e = next((e for e in eqs if _dot(e, v) != 0), None)
        if e is None:
            return None
        bad = e if _dot(e, v) < 0 else _neg(e)
    lat = c.lattice
    inv = lat.inverse
    y = lat.cls(sum(inv[i][j] * bad[j] for j in range(lat.rank)) for i in range(lat.rank))
    return y.primitive()


def contains(c: Cone, d: DivisorClass) -> bool:
    return farkas_certificate(c, d) is None


def is_dual_pair(a: Cone, b: Cone) -> bool:
    _same_lattice(a.lattice, b.lattice)
    return (
        dual_cone(a).generators == extremal_rays(b).generators
        and dual_cone(b).generators == extremal_rays(a).generators
    )


def nakai_ample(d: DivisorClass, effective_gens: Sequence[DivisorClass]) -> bool:
    if not effective_gens:
        raise PreconditionError("ampleness needs the effective generators")
    return intersect(d, d) > 0 and all(intersect(d, c) > 0 for c in effective_gens)


def sample_interior(c: Cone) -> DivisorClass:
    if not c.is_full_dimensional:
        raise NotFullDimensionalError("cone has empty interior", dimension=c.dimension, rank=c.lattice.rank)
    total = c.lattice.zero()
    for r in c.rays:
        total = total + r
    return total


def _cell_rays(constraints: list[Vector], dim: int) -> tuple[list[Vector], list[Vector]]:
    return double_description(constraints, dim)


def subdivide_by_min_degree(
    nef: Cone,
    candidates: Sequence[DivisorClass],
    mults: Optional[Sequence[int]] = None,
) -> list[Cell]:
    """
    Cells of nef on which each candidate minimizes D.C / m.

    The cell of C_k is nef cut by D.(m_k C_j - m_j C_k) >= 0 for all j != k.
    Lower-dimensional cells are dropped.
    """
    if not candidates:
        raise PreconditionError("subdivision needs at least one candidate")
    lat = nef.lattice
    for c in candidates:
        _same_lattice(lat, c.lattice)
    ms = list(mults) if mults is not None else [1] * len(candidates)
    if len(ms) != len(candidates) or any(m < 1 for m in ms):
        raise PreconditionError("one multiplicity >= 1 per candidate")
    normals, eqs = nef.hrep
    base = normals + eqs + [_neg(e) for e in eqs]
    systems = []
    for k, ck in enumerate(candidates):
        extra = []
        for j, cj in enumerate(candidates):
            if j == k:
                continue
            diff = ms[k] * cj - ms[j] * ck
            if not diff.is_zero:
                extra.append(_pairing_vector(lat, _integral(diff)))
        systems.append(base + extra)
    if settings.workers > 1 and len(systems) > 1:
        results = Parallel(n_jobs=settings.workers)(delayed(_cell_rays)(s, lat.rank) for s in systems)
    else:
        results = [_cell_rays(s, lat.rank) for s in systems]
    cells = []
    for k, (rays, lines) in enumerate(results):
        cone = _from_dd(lat, rays, lines)
        if not cone.is_full_dimensional:
            logger.debug(f"cell of {candidates[k]} is lower-dimensional, dropped")
            continue
        cells.append(Cell(k, candidates[k], cone))
    logger.info(f"subdivided a {len(nef)}-ray cone into {len(cells)} cells over {len(candidates)} candidates")
    return cells


def degree_profile(c: Cone, winner: DivisorClass) -> list:
    return [intersect(winner, r) for r in c.rays]
