# rapprox/cli/commands/enumerate.py
from __future__ import annotations

import argparse
import logging
from fractions import Fraction

from rapprox.approx.enumerate import counting_function, enumerate_near, enumerate_projective
from rapprox.approx.estimate import growth_ratio
from rapprox.cli.report import Report
from rapprox.cli.scenario import Scenario, split_ints
from rapprox.core.errors import ScenarioError
from rapprox.geometry.projective import format_point, height, parse_point

logger = logging.getLogger("cli")

POINT_COLUMNS = ("point", "height")
LADDER_COLUMNS = ("max_height", "space_count", "hyperplane_count")


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--space", choices=("p1", "p2"), default="p1")
    parser.add_argument("--point", help="only points near this one, as a:b or a:b:c")
    parser.add_argument("--radius", help="chart radius for --point, e.g. 1/100")
    parser.add_argument("--ladder", help="comma separated heights; compares growth with a coordinate hyperplane")


def scenario_fields(args: argparse.Namespace) -> dict:
    fields = {"space": args.space, "point": args.point, "radius": args.radius}
    if args.ladder:
        fields["ladder"] = split_ints(args.ladder, "ladder")
    return fields


def _hyperplane_count(n: int, b: int) -> int:
    # the hyperplane of P^1 is a single point
    return counting_function(n - 1, b) if n > 1 else 1


def _ladder(scenario: Scenario, n: int) -> Report:
    rungs = scenario.ladder
    space = [(b, counting_function(n, b)) for b in rungs]
    plane = [(b, _hyperplane_count(n, b)) for b in rungs]
    report = growth_ratio(space, plane)
    logger.info(f"growth slopes {report.slope_a:.3f} (space) and {report.slope_b:.3f} (hyperplane)")
    data = {
        "space": scenario.space,
        "ladder": rungs,
        "growth": {**report.to_dict(), "a": scenario.space, "b": "hyperplane"},
    }
    rows = [
        {"max_height": b, "space_count": s, "hyperplane_count": h}
        for (b, s), (_, h) in zip(space, plane)
    ]
    return Report(data, rows, LADDER_COLUMNS)


def execute(scenario: Scenario) -> Report:
    n = 1 if scenario.space == "p1" else 2
    if scenario.ladder:
        return _ladder(scenario, n)
    b = scenario.max_height
    data: dict = {"space": scenario.space, "max_height": b}
    if scenario.point is not None:
        target = parse_point(scenario.point)
        if target.dim != n:
            raise ScenarioError(f"point {scenario.point} is not in {scenario.space}", field="point")
        radius = Fraction(scenario.radius) if scenario.radius is not None else None
        points = enumerate_near(target, b, radius)
        data["point"] = format_point(target)
    else:
        points = enumerate_projective(n, b)
        data["closed_form_count"] = counting_function(n, b)
    data["count"] = len(points)
    data["points"] = [format_point(p) for p in points]
    logger.info(f"{len(points)} points of height <= {b} in {scenario.space}")
    rows = [{"point": format_point(p), "height": height(p)} for p in points]
    return Report(data, rows, POINT_COLUMNS)
