# rapprox/core/errors.py
"""
Exception hierarchy.

Every error carries a ``detail`` dict shaped like ``{"error": <code>, ...}``
so the CLI can log it and tests can match on the code.
"""
from __future__ import annotations

from typing import Any


class RapproxError(Exception):
    code = "error"

    def __init__(self, message: str = "", **context: Any) -> None:
        super().__init__(message or self.code)
        self.detail: dict[str, Any] = {"error": self.code, **context}
        if message:
            self.detail.setdefault("reason", message)


# ---------------------------------------------------------------------------
# Points and curves
# ---------------------------------------------------------------------------

class InvalidPointError(RapproxError, ValueError):
    code = "invalid_point"


class DimensionMismatchError(RapproxError, ValueError):
    code = "dimension_mismatch"


class ZeroChartError(RapproxError, ValueError):
    code = "zero_chart_coordinate"


class SamePointError(RapproxError, ValueError):
    code = "same_point"


class InvalidCurveError(RapproxError, ValueError):
    code = "invalid_curve"


# ---------------------------------------------------------------------------
# Lattices and cones
# ---------------------------------------------------------------------------

class LatticeMismatchError(RapproxError, ValueError):
    code = "lattice_mismatch"


class SingularGramError(RapproxError, ValueError):
    code = "singular_gram"


class PresetError(RapproxError, ValueError):
    code = "preset_out_of_range"


class InvalidConfigurationError(RapproxError, ValueError):
    code = "invalid_configuration"


class PreconditionError(RapproxError, ValueError):
    code = "precondition_violated"


class DegenerateConeError(RapproxError, ValueError):
    code = "degenerate_cone"


class RankCapError(RapproxError, ValueError):
    code = "rank_cap_exceeded"


class NotFullDimensionalError(RapproxError, ValueError):
    code = "not_full_dimensional"


# ---------------------------------------------------------------------------
# Surfaces
# ---------------------------------------------------------------------------

class BaseLocusError(RapproxError, ValueError):
    code = "base_locus"


class SectionlessClassError(RapproxError, ValueError):
    code = "sectionless_class"


# ---------------------------------------------------------------------------
# Approximation and prediction
# ---------------------------------------------------------------------------

class NotAmpleError(RapproxError, ValueError):
    code = "not_ample"


class EmptyCatalogError(RapproxError, ValueError):
    code = "empty_catalog"


class MissingDisjointnessError(RapproxError, ValueError):
    code = "missing_disjointness_fact"


class InsufficientLadderError(RapproxError, ValueError):
    code = "insufficient_ladder"


class EmptyEstimateError(RapproxError, ValueError):
    code = "empty_estimate"


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------

class ScenarioError(RapproxError, ValueError):
    code = "bad_scenario"


class FixtureFailure(RapproxError):
    code = "fixture_failed"
