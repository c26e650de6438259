# rapprox/cli/commands/cones.py
from __future__ import annotations

import argparse
import logging

from rapprox.cli.report import Report
from rapprox.cli.scenario import Scenario, context_from_flags, resolve_class, resolve_context, resolve_model
from rapprox.lattice.cones import (
    degree_profile,
    dual_cone,
    extremal_rays,
    facets,
    farkas_certificate,
    is_dual_pair,
    nakai_ample,
)
from rapprox.lattice.presets import Preset
from rapprox.predictor.predict import predict_over_cone

logger = logging.getLogger("cli")

RAY_COLUMNS = ("ray", "label")


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("operation", choices=("dual", "check", "subdivide"))
    parser.add_argument("--catalog", help="comma separated curves through the point (subdivide)")
    parser.add_argument("--mults", help="comma separated branch multiplicities, one per curve")
    parser.add_argument("--facets", action="store_true", help="also list facet normals in plain coordinates")


def scenario_fields(args: argparse.Namespace) -> dict:
    fields = {"operation": args.operation, "facets": args.facets}
    ctx = context_from_flags(args.catalog, args.mults)
    if ctx is not None:
        fields["context"] = ctx
    return fields


def _ray_rows(preset: Preset, rays) -> list[dict]:
    return [{"ray": str(r), "label": preset.label_of(r) or ""} for r in rays]


def _facet_rows(cone) -> list[list[int]]:
    return [list(h) for h in facets(cone)]


def _dual(preset: Preset, scenario: Scenario) -> Report:
    eff = preset.effective_cone
    dual = dual_cone(eff)
    rows = _ray_rows(preset, dual.rays)
    data = {
        "operation": "dual",
        "preset": preset.key,
        "effective": list(preset.effective),
        "ray_count": len(rows),
        "rays": rows,
    }
    if scenario.facets:
        data["facets"] = _facet_rows(eff)
    if preset.nef:
        data["matches_nef"] = is_dual_pair(eff, preset.nef_cone)
    logger.info(f"dual of the effective cone of {preset.key} has {len(rows)} rays")
    return Report(data, rows, RAY_COLUMNS, data.get("matches_nef", True))


def _check(preset: Preset, scenario: Scenario) -> Report:
    eff, nef = preset.effective_cone, preset.nef_cone
    paired = is_dual_pair(eff, nef)
    data = {
        "operation": "check",
        "preset": preset.key,
        "dual_pair": paired,
        "nef_rays": _ray_rows(preset, extremal_rays(nef).rays),
    }
    ok = paired
    if scenario.facets:
        data["facets"] = _facet_rows(nef)
    if scenario.divisor is not None:
        d = resolve_class(preset, scenario.divisor)
        cert = farkas_certificate(nef, d)
        data["divisor"] = {
            "class": str(d),
            "nef": cert is None,
            "certificate": str(cert) if cert is not None else None,
            "ample": nakai_ample(d, preset.effective_classes),
        }
    if not paired:
        logger.warning(f"effective and nef cones of {preset.key} are not dual")
    return Report(data, data["nef_rays"], RAY_COLUMNS, ok)


def _subdivide(preset: Preset, scenario: Scenario) -> Report:
    ctx = resolve_context(preset, scenario.context)
    cells = predict_over_cone(ctx, preset.nef_cone)
    out = []
    for cp in cells:
        entry = cp.to_dict()
        entry["profile"] = [str(x) for x in degree_profile(cp.cell.cone, cp.cell.candidate)]
        out.append(entry)
    data = {
        "operation": "subdivide",
        "preset": preset.key,
        "candidates": [c.label for c in ctx.candidates],
        "cells": out,
    }
    return Report(data, ok=all(cp.constant for cp in cells))


def execute(scenario: Scenario) -> Report:
    preset = resolve_model(scenario.model)
    if scenario.operation == "dual":
        return _dual(preset, scenario)
    if scenario.operation == "check":
        return _check(preset, scenario)
    return _subdivide(preset, scenario)
