# rapprox/cli/scenario.py
"""Scenario files: validated task descriptions for ``python -m rapprox``."""
from __future__ import annotations

import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from rapprox.core.errors import ScenarioError
from rapprox.geometry.projective import parse_point
from rapprox.lattice.nslattice import DivisorClass, NSLattice
from rapprox.lattice.presets import Preset, load_preset
from rapprox.predictor.predict import Candidate, PointContext

logger = logging.getLogger("cli")

ClassIn = Union[str, list[int]]


# ---------------------------------------------------------------------------
# Pydantic models
# ---------------------------------------------------------------------------

class CandidateIn(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    label: str = Field(..., min_length=1)
    cls: ClassIn = Field(..., alias="class")
    mult: int = Field(1, ge=1)


class DisjointIn(BaseModel):
    candidate: str = Field(..., min_length=1)
    effective: ClassIn


class ContextIn(BaseModel):
    candidates: list[CandidateIn] = Field(..., min_length=1)
    disjoint: list[DisjointIn] = Field(default_factory=list)


class LatticeIn(BaseModel):
    labels: list[str] = Field(..., min_length=1)
    gram: list[list[int]]
    effective: list[ClassIn] = Field(default_factory=list)
    nef: list[ClassIn] = Field(default_factory=list)


class ModelIn(BaseModel):
    preset: Optional[str] = None
    lattice: Optional[LatticeIn] = None

    @field_validator("preset")
    @classmethod
    def _known_preset(cls, v: Optional[str]) -> Optional[str]:
        if v is not None:
            load_preset(v)
        return v

    @model_validator(mode="after")
    def _one_source(self) -> "ModelIn":
        if (self.preset is None) == (self.lattice is None):
            raise ValueError("give exactly one of preset or lattice")
        return self


class Scenario(BaseModel):
    task: Literal["lattice", "cones", "predict", "enumerate", "alpha", "verify"]
    model: Optional[ModelIn] = None
    context: Optional[ContextIn] = None
    divisor: Optional[ClassIn] = None
    operation: Literal["dual", "check", "subdivide"] = "dual"
    labels: list[str] = Field(default_factory=list)
    space: Literal["p1", "p2"] = "p1"
    curve: Literal["line", "cusp", "twisted_cubic", "quintic_cusp", "p1", "p2", "product"] = "p1"
    max_height: int = Field(100, ge=1, le=1_000_000)
    radius: Optional[str] = None
    threshold: Optional[str] = None
    point: Optional[str] = None
    suite: Literal["fixtures", "properties"] = "fixtures"
    format: Literal["json", "csv"] = "json"
    out: Optional[str] = None
    metric: Literal["chordal", "chart"] = "chordal"
    degree: Optional[int] = Field(None, ge=1, le=4)
    facets: bool = False
    plus: Optional[ClassIn] = None
    ladder: list[int] = Field(default_factory=list)

    @field_validator("ladder")
    @classmethod
    def _ladder(cls, v: list[int]) -> list[int]:
        if v and (len(v) < 4 or min(v) < 1 or len(set(v)) != len(v)):
            raise ValueError("a ladder needs at least 4 distinct heights >= 1")
        return sorted(v)

    @field_validator("radius", "threshold")
    @classmethod
    def _rational(cls, v: Optional[str]) -> Optional[str]:
        if v is None:
            return v
        try:
            ok = Fraction(v) > 0
        except ZeroDivisionError:
            ok = False
        if not ok:
            raise ValueError("must be a positive rational")
        return v

    @field_validator("point")
    @classmethod
    def _point(cls, v: Optional[str]) -> Optional[str]:
        if v is not None:
            parse_point(v)
        return v

    @model_validator(mode="after")
    def _task_inputs(self) -> "Scenario":
        if self.task in ("lattice", "cones", "predict") and self.model is None:
            raise ValueError(f"task {self.task} needs a model")
        if self.task == "predict" and (self.context is None or self.divisor is None):
            raise ValueError("task predict needs a context and a divisor")
        if self.task == "cones" and self.operation == "subdivide" and self.context is None:
            raise ValueError("subdivide needs a context of candidate curves")
        return self


# ---------------------------------------------------------------------------
# Loading and resolution
# ---------------------------------------------------------------------------

def _field_path(err: ValidationError) -> str:
    first = err.errors()[0]
    return ".".join(str(x) for x in first.get("loc", ())) or "<root>"


def parse_scenario(data: dict) -> Scenario:
    try:
        return Scenario.model_validate(data)
    except ValidationError as e:
        raise ScenarioError(f"invalid scenario at {_field_path(e)}", field=_field_path(e), errors=e.error_count())


def load_scenario(path: Union[str, Path]) -> Scenario:
    p = Path(path)
    try:
        data = json.loads(p.read_text())
    except FileNotFoundError:
        raise ScenarioError(f"scenario file {p} not found", field="<file>")
    except json.JSONDecodeError as e:
        raise ScenarioError(f"scenario file {p} is not JSON", field="<file>", line=e.lineno)
    logger.debug(f"loaded scenario {p}")
    return parse_scenario(data)


def resolve_class(preset: Preset, value: ClassIn) -> DivisorClass:
    if isinstance(value, str):
        return preset.cls(value)
    return preset.lattice.cls(value)


def custom_preset(lat_in: LatticeIn) -> Preset:
    """A preset from an explicit Gram matrix; coefficient lists become named classes."""
    lat = NSLattice(tuple(lat_in.labels), tuple(tuple(r) for r in lat_in.gram), name="custom")
    named = {lab: lat[lab] for lab in lat.labels}

    def label(value: ClassIn) -> str:
        if isinstance(value, str):
            return value
        key = "(" + ",".join(str(x) for x in value) + ")"
        named[key] = lat.cls(value)
        return key

    eff = tuple(label(c) for c in lat_in.effective)
    nef = tuple(label(c) for c in lat_in.nef)
    return Preset("custom", lat, named, eff, nef, nef)


def resolve_model(model: ModelIn) -> Preset:
    if model.preset is not None:
        return load_preset(model.preset)
    return custom_preset(model.lattice)


def resolve_context(preset: Preset, ctx: ContextIn) -> PointContext:
    cands = tuple(Candidate(c.label, resolve_class(preset, c.cls), c.mult) for c in ctx.candidates)
    facts = tuple((d.candidate, resolve_class(preset, d.effective)) for d in ctx.disjoint)
    return PointContext(preset.lattice, cands, tuple(preset.effective_classes), facts)


# ---------------------------------------------------------------------------
# Command-line flags
# ---------------------------------------------------------------------------

def split_list(text: Optional[str]) -> list[str]:
    return [x.strip() for x in text.split(",") if x.strip()] if text else []


def split_ints(text: Optional[str], field: str) -> list[int]:
    try:
        return [int(x) for x in split_list(text)]
    except ValueError:
        raise ScenarioError(f"{field} takes comma separated integers", field=field)


def context_from_flags(catalog: Optional[str], mults: Optional[str] = None) -> Optional[dict]:
    """``--catalog "S,F1" --mults "1,2"`` as a scenario context; labels double as classes."""
    labels = split_list(catalog)
    if not labels:
        return None
    ms = split_list(mults) or ["1"] * len(labels)
    if len(ms) != len(labels):
        raise ScenarioError("one multiplicity per catalogue curve", field="mults")
    return {"candidates": [{"label": lab, "class": lab, "mult": m} for lab, m in zip(labels, ms)]}
