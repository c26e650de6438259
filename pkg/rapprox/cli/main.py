# rapprox/cli/main.py
"""
Command line entry point.

Every subcommand builds a Scenario (from flags, or from ``--scenario FILE``),
runs it and writes the report to stdout or ``--out``. Logs go to stderr.
Exit status: 0 success, 1 failed check or computation error, 2 usage error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from types import ModuleType
from typing import Optional, Sequence

from pydantic import ValidationError

from rapprox.cli.commands import alpha, cones, lattice, predict, verify
from rapprox.cli.commands import enumerate as enumerate_cmd
from rapprox.cli.report import emit
from rapprox.cli.scenario import Scenario, load_scenario, parse_scenario
from rapprox.core.config import settings
from rapprox.core.errors import FixtureFailure, RapproxError, ScenarioError

logger = logging.getLogger("cli")

COMMANDS: dict[str, ModuleType] = {
    "lattice": lattice,
    "cones": cones,
    "predict": predict,
    "enumerate": enumerate_cmd,
    "alpha": alpha,
    "verify": verify,
}

HELP = {
    "lattice": "labels, Gram matrix, signature, dual basis and named classes of a preset",
    "cones": "dual cones, duality checks and min-degree subdivisions",
    "predict": "predicted approximation constant of a divisor",
    "enumerate": "rational points of bounded height",
    "alpha": "empirical approximation constants",
    "verify": "fixture and property suites",
}

# presets here name surfaces; for alpha they name curves
_MODEL_TASKS = ("lattice", "cones", "predict")


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--preset", help="preset name with arguments, e.g. blowup_p2:4 or case3:2,multiple")
    parser.add_argument("--scenario", help="JSON scenario file; replaces the task flags")
    parser.add_argument("--max-height", type=int, dest="max_height")
    parser.add_argument("--threshold", help="rational threshold c for dist*H <= c")
    parser.add_argument("--divisor", help="divisor class as an expression over preset labels")
    parser.add_argument("--out", help="output file (default stdout)")
    parser.add_argument("--format", choices=("json", "csv"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rapprox", description="Approximation constants on rational surfaces")
    parser.add_argument("--log-level", dest="log_level", help=f"default {settings.log_level}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, module in COMMANDS.items():
        p = sub.add_parser(name, help=HELP[name])
        _common(p)
        module.add_arguments(p)
    run = sub.add_parser("run", help="run a scenario file, whatever its task")
    run.add_argument("scenario")
    run.add_argument("--out")
    run.add_argument("--format", choices=("json", "csv"))
    return parser


def _overrides(args: argparse.Namespace) -> dict:
    return {k: getattr(args, k) for k in ("out", "format") if getattr(args, k, None) is not None}


def scenario_from_args(args: argparse.Namespace) -> Scenario:
    if args.scenario:
        scenario = load_scenario(args.scenario)
        if args.command != "run" and scenario.task != args.command:
            raise ScenarioError(
                f"scenario task {scenario.task!r} does not match subcommand {args.command!r}", field="task"
            )
        extra = _overrides(args)
        return parse_scenario({**scenario.model_dump(by_alias=True), **extra}) if extra else scenario
    data: dict = {"task": args.command}
    if args.preset and args.command in _MODEL_TASKS:
        data["model"] = {"preset": args.preset}
    for key in ("max_height", "threshold", "divisor", "out", "format"):
        value = getattr(args, key, None)
        if value is not None:
            data[key] = value
    module = COMMANDS[args.command]
    data.update({k: v for k, v in module.scenario_fields(args).items() if v is not None})
    return parse_scenario(data)


def run(scenario: Scenario) -> int:
    report = COMMANDS[scenario.task].execute(scenario)
    emit(report, scenario.format, scenario.out)
    if not report.ok:
        raise FixtureFailure(f"{scenario.task} reported a failed check", task=scenario.task)
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=(args.log_level or settings.log_level).upper(), stream=sys.stderr)
    try:
        return run(scenario_from_args(args))
    except (ScenarioError, ValidationError) as e:
        logger.error(f"usage error: {getattr(e, 'detail', e)}")
        return 2
    except FixtureFailure as e:
        logger.error(f"{e.detail}")
        return 1
    except RapproxError as e:
        logger.error(f"failed: {e.detail}")
        return 1
