# rapprox/cli/commands/predict.py
from __future__ import annotations

import argparse
import logging

from rapprox.cli.report import Report
from rapprox.cli.scenario import Scenario, context_from_flags, resolve_class, resolve_context, resolve_model
from rapprox.predictor.predict import combine_divisors, predict_alpha

logger = logging.getLogger("cli")

DEGREE_COLUMNS = ("curve", "degree", "winner")


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--catalog", help="comma separated curves through the point")
    parser.add_argument("--mults", help="comma separated branch multiplicities, one per curve")
    parser.add_argument("--plus", help="second divisor; reports whether common winners survive the sum")


def scenario_fields(args: argparse.Namespace) -> dict:
    fields = {"plus": args.plus}
    ctx = context_from_flags(args.catalog, args.mults)
    if ctx is not None:
        fields["context"] = ctx
    return fields


def execute(scenario: Scenario) -> Report:
    preset = resolve_model(scenario.model)
    ctx = resolve_context(preset, scenario.context)
    d = resolve_class(preset, scenario.divisor)
    pred = predict_alpha(ctx, d)
    logger.info(f"{preset.key}, D = {d}: alpha {pred.alpha} on {list(pred.winners)}")
    data = {"preset": preset.key, "divisor": str(d), **pred.to_dict()}
    if scenario.plus is not None:
        d2 = resolve_class(preset, scenario.plus)
        common, kept = combine_divisors(ctx, d, d2)
        data["sum"] = {"plus": str(d2), "divisor": str(d + d2), "common_winners": list(common), "kept": kept}
    rows = [
        {"curve": label, "degree": str(v), "winner": label in pred.winners}
        for label, v in sorted(pred.degrees.items())
    ]
    return Report(data, rows, DEGREE_COLUMNS)
