# rapprox/predictor/predict.py
"""
Conjectural approximation constants from a catalogue of curves.

For an ample class D and rational curves C through a point P, each with
branch multiplicity m at P, the prediction is min D.C / m and the curves
attaining it. Nothing here searches for curves; the caller supplies them.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from rapprox.core.errors import (
    EmptyCatalogError,
    LatticeMismatchError,
    MissingDisjointnessError,
    NotAmpleError,
    PreconditionError,
)
from rapprox.lattice.cones import Cell, Cone, nakai_ample, sample_interior, subdivide_by_min_degree
from rapprox.lattice.nslattice import DivisorClass, NSLattice, intersect

logger = logging.getLogger("predictor")


@dataclass(frozen=True)
class Candidate:
    label: str
    cls: DivisorClass
    mult: int = 1


@dataclass(frozen=True)
class PointContext:
    lattice: NSLattice
    candidates: tuple[Candidate, ...]
    effective: tuple[DivisorClass, ...] = ()
    # (candidate label, effective class E) with C.E = 0 asserted by the caller
    disjoint: tuple[tuple[str, DivisorClass], ...] = ()

    def __post_init__(self) -> None:
        for c in self.candidates:
            if c.mult < 1:
                raise PreconditionError("branch multiplicity must be >= 1", label=c.label, mult=c.mult)
            if c.cls.lattice != self.lattice:
                raise LatticeMismatchError("candidate lives in another lattice", label=c.label)
        labels = [c.label for c in self.candidates]
        if len(set(labels)) != len(labels):
            raise PreconditionError("candidate labels must be distinct", labels=labels)

    @classmethod
    def from_preset(
        cls,
        preset,
        catalog: Sequence[str],
        mults: Optional[Sequence[int]] = None,
        disjoint: Sequence[tuple[str, str]] = (),
    ) -> "PointContext":
        ms = list(mults) if mults is not None else [1] * len(catalog)
        cands = tuple(Candidate(lab, preset.cls(lab), m) for lab, m in zip(catalog, ms))
        facts = tuple((lab, preset.cls(e)) for lab, e in disjoint)
        return cls(preset.lattice, cands, tuple(preset.effective_classes), facts)

    def candidate(self, label: str) -> Candidate:
        for c in self.candidates:
            if c.label == label:
                return c
        raise PreconditionError(f"no candidate labelled {label!r}", labels=[c.label for c in self.candidates])


@dataclass(frozen=True)
class Prediction:
    alpha: Fraction
    winners: tuple[str, ...]
    degrees: dict[str, Fraction] = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        return {
            "alpha": str(self.alpha),
            "winners": list(self.winners),
            "degrees": {k: str(v) for k, v in sorted(self.degrees.items())},
        }


@dataclass(frozen=True)
class CellPrediction:
    cell: Cell
    alpha: Fraction
    winners: tuple[str, ...]
    constant: bool

    def to_dict(self) -> dict:
        return {
            "candidate": self.winners[0] if len(self.winners) == 1 else list(self.winners),
            "alpha_at_sample": str(self.alpha),
            "rays": [str(r) for r in self.cell.cone.rays],
            "winners": list(self.winners),
            "constant": self.constant,
        }


@dataclass(frozen=True)
class ProductPrediction:
    alpha: Fraction
    axis: str
    barrier: Fraction

    def to_dict(self) -> dict:
        return {"alpha": str(self.alpha), "axis": self.axis, "barrier": str(self.barrier)}


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def _ratio(d: DivisorClass, c: Candidate) -> Fraction:
    return Fraction(intersect(d, c.cls)) / c.mult


def winners_at(ctx: PointContext, d: DivisorClass) -> Prediction:
    """Minimum of D.C/m and its argmin set, with no ampleness check."""
    if not ctx.candidates:
        raise EmptyCatalogError("catalogue of curves through the point is empty")
    if d.lattice != ctx.lattice:
        raise LatticeMismatchError("divisor lives in another lattice")
    degrees = {c.label: _ratio(d, c) for c in ctx.candidates}
    alpha = min(degrees.values())
    winners = tuple(sorted(k for k, v in degrees.items() if v == alpha))
    return Prediction(alpha, winners, degrees)


def ampleness_certificate(ctx: PointContext, d: DivisorClass) -> Optional[dict]:
    if d.lattice != ctx.lattice:
        raise LatticeMismatchError("divisor lives in another lattice")
    if nakai_ample(d, ctx.effective):
        return None
    self_degree = intersect(d, d)
    if self_degree <= 0:
        return {"curve": str(d), "degree": str(self_degree)}
    bad = next(c for c in ctx.effective if intersect(d, c) <= 0)
    return {"curve": str(bad), "degree": str(intersect(d, bad))}


def predict_alpha(ctx: PointContext, d: DivisorClass) -> Prediction:
    if not ctx.candidates:
        raise EmptyCatalogError("catalogue of curves through the point is empty")
    cert = ampleness_certificate(ctx, d)
    if cert is not None:
        raise NotAmpleError(f"{d} is not ample", divisor=str(d), certificate=cert)
    pred = winners_at(ctx, d)
    logger.debug(f"D = {d}: alpha {pred.alpha}, winners {list(pred.winners)}")
    return pred


def predict_over_cone(ctx: PointContext, nef: Cone) -> list[CellPrediction]:
    """
    Subdivide nef by the minimizing candidate and predict on each cell.

    ``constant`` records that the cell's candidate stays a winner at every
    ray pushed slightly into the cell.
    """
    if not ctx.candidates:
        raise EmptyCatalogError("catalogue of curves through the point is empty")
    cells = subdivide_by_min_degree(
        nef, [c.cls for c in ctx.candidates], [c.mult for c in ctx.candidates]
    )
    out = []
    for cell in cells:
        sample = sample_interior(cell.cone)
        pred = winners_at(ctx, sample)
        label = ctx.candidates[cell.index].label
        weight = len(cell.cone) + 1
        constant = all(label in winners_at(ctx, weight * r + sample).winners for r in cell.cone.rays)
        if not constant:
            logger.warning(f"winner {label} is not constant on its cell")
        out.append(CellPrediction(cell, pred.alpha, pred.winners, constant))
    logger.info(f"predicted over {len(out)} cells")
    return out


def add_effective_rule(ctx: PointContext, d: DivisorClass, e: DivisorClass) -> bool:
    """
    Whether a winner under D stays a winner under D + E.

    Needs a recorded fact C.E = 0 for one of the winners C under D.
    """
    if e.is_zero:
        return True
    before = winners_at(ctx, d)
    facts = [lab for lab, cls in ctx.disjoint if cls == e and lab in before.winners]
    if not facts:
        raise MissingDisjointnessError(
            "no recorded disjointness fact for a winner", winners=list(before.winners), effective=str(e)
        )
    label = facts[0]
    c = ctx.candidate(label)
    if intersect(c.cls, e) != 0:
        logger.warning(f"recorded fact for {label} is false: {label}.E = {intersect(c.cls, e)}")
        return False
    return label in winners_at(ctx, d + e).winners


def combine_divisors(ctx: PointContext, d1: DivisorClass, d2: DivisorClass) -> tuple[tuple[str, ...], bool]:
    """Common winners of D1 and D2, and whether they all win for D1 + D2."""
    w1 = set(winners_at(ctx, d1).winners)
    w2 = set(winners_at(ctx, d2).winners)
    common = tuple(sorted(w1 & w2))
    total = set(winners_at(ctx, d1 + d2).winners)
    return common, set(common) <= total


def product_prediction(alpha_x: Fraction, alpha_y: Fraction) -> ProductPrediction:
    """
    Constant of (P, Q) under the exterior product of the two classes.

    Realised along the fibre through the factor with the smaller constant;
    the diagonal value alpha_x + alpha_y is what off-axis sequences face.
    """
    ax, ay = Fraction(alpha_x), Fraction(alpha_y)
    if ax <= 0 or ay <= 0:
        raise PreconditionError("factor constants are positive", alpha_x=str(ax), alpha_y=str(ay))
    axis = "x" if ax < ay else "y" if ay < ax else "both"
    return ProductPrediction(min(ax, ay), axis, ax + ay)
