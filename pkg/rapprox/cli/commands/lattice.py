# rapprox/cli/commands/lattice.py
from __future__ import annotations

import argparse
import logging

from rapprox.cli.report import Report
from rapprox.cli.scenario import Scenario, resolve_model, split_list
from rapprox.lattice.nslattice import dual_basis, has_hodge_signature

logger = logging.getLogger("cli")


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--labels", help="comma separated classes for the intersection table")


def scenario_fields(args: argparse.Namespace) -> dict:
    return {"labels": split_list(args.labels)}


def execute(scenario: Scenario) -> Report:
    preset = resolve_model(scenario.model)
    lat = preset.lattice
    order = scenario.labels or list(preset.table or preset.nef)
    data = {
        "preset": preset.key,
        "labels": list(lat.labels),
        "gram": [list(r) for r in lat.gram],
        "det": lat.det,
        "signature": list(lat.signature),
        "hodge": has_hodge_signature(lat),
        "dual_basis": [str(d) for d in dual_basis(lat)],
        "named": {k: str(v) for k, v in preset.named.items()},
        "effective": list(preset.effective),
        "nef": list(preset.nef),
        "table": {"labels": order, "rows": preset.intersection_table(order) if order else []},
    }
    logger.info(f"lattice {preset.key}: rank {lat.rank}, signature {lat.signature}")
    return Report(data)
