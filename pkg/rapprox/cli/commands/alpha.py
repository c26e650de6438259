# rapprox/cli/commands/alpha.py
"""
Empirical approximation constants next to their predicted values.

Curve presets walk a stream of points on a named rational curve (the best
parameter sequence plus every parameter near t0); ``p1`` samples the
projective line near [0:1]; ``p2`` clusters good approximators of
[0:0:1] by line; ``product`` measures the barrier on P^1 x P^1.
"""
from __future__ import annotations

import argparse
import logging
from fractions import Fraction
from typing import Optional

from rapprox.approx.cluster import axis_sequence, cluster_box, line_cluster, product_min_gamma
from rapprox.approx.enumerate import NEAR_METRICS, curve_images_near, enumerate_near, near_chart, near_frontier
from rapprox.approx.estimate import RECORD_COLUMNS, Frontier, empirical_alpha, measure, metric_ratio_bounds, summarize
from rapprox.cli.report import Report
from rapprox.cli.scenario import Scenario
from rapprox.core.errors import ScenarioError
from rapprox.geometry.projective import ProjPoint, format_point, parse_point
from rapprox.geometry.ratcurves import alpha_along_curve, best_sequence, evaluate, named_curve
from rapprox.geometry.surfaces import gamma_agreement, linear_system_basis, max_gamma_gap
from rapprox.predictor.predict import product_prediction

logger = logging.getLogger("cli")

CURVE_PRESETS = ("line", "cusp", "twisted_cubic", "quintic_cusp")


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--radius", help="chart radius of the near-point window, e.g. 1/100")
    parser.add_argument("--point", help="target point for p1 / p2 (default [0:1] / [0:0:1])")
    parser.add_argument(
        "--metric",
        choices=NEAR_METRICS,
        default="chordal",
        help="p1: distance used for the records; chart also reports the chordal estimate",
    )
    parser.add_argument("--degree", type=int, help="p2: compare gammas through the full degree-a plane system")


def scenario_fields(args: argparse.Namespace) -> dict:
    return {
        "curve": args.preset or "p1",
        "radius": args.radius,
        "point": args.point,
        "metric": args.metric,
        "degree": args.degree,
    }


def _radius(scenario: Scenario) -> Optional[Fraction]:
    return Fraction(scenario.radius) if scenario.radius is not None else None


def _target(scenario: Scenario, default: tuple[int, ...]) -> ProjPoint:
    if scenario.point is None:
        return ProjPoint(default)
    p = parse_point(scenario.point)
    if p.dim != len(default) - 1:
        raise ScenarioError(f"point {scenario.point} has the wrong dimension", field="point")
    return p


def _estimate_report(target, estimate, predicted: Fraction, extra: dict) -> Report:
    data = {
        "target": format_point(target),
        "predicted_alpha": str(predicted),
        "min_dist_height": str(estimate.min_dist_height),
        **estimate.to_dict(),
        **extra,
    }
    return Report(data, [r.to_row() for r in estimate.records], RECORD_COLUMNS)


def _along_curve(scenario: Scenario) -> Report:
    curve, t0 = named_curve(scenario.curve)
    target = evaluate(curve, t0)
    b = scenario.max_height
    stream = set(best_sequence(curve, t0, b)) | set(curve_images_near(curve, t0, b, _radius(scenario)))
    est = empirical_alpha(target, stream)
    predicted = alpha_along_curve(curve, t0)
    logger.info(f"{scenario.curve}: predicted {predicted}, tail median {est.tail_median_gamma:.4f}")
    return _estimate_report(target, est, predicted, {"curve": scenario.curve, "parameter_max_height": b})


def _on_line(scenario: Scenario) -> Report:
    target = _target(scenario, (0, 1))
    b, radius = scenario.max_height, _radius(scenario)
    front = near_frontier(target, b, radius, scenario.metric)
    est = summarize(target, front, b)
    extra = {"curve": "p1", "metric": scenario.metric}
    if scenario.metric == "chart":
        chordal = summarize(target, near_frontier(target, b, radius), b)
        points = {r.point for r in front.records} | {r.point for r in chordal.records}
        bounds = metric_ratio_bounds(target, points, near_chart(target))
        extra["chordal_tail_median_gamma"] = chordal.tail_median_gamma
        extra["metric_delta"] = abs(est.tail_median_gamma - chordal.tail_median_gamma)
        extra["ratio_bounds"] = [str(x) for x in bounds] if bounds else None
        logger.info(f"chart vs chordal tail median differ by {extra['metric_delta']:.4f}")
    return _estimate_report(target, est, Fraction(1), extra)


def _system_agreement(target: ProjPoint, scenario: Scenario) -> dict:
    system = linear_system_basis(scenario.degree, [])
    near = enumerate_near(target, scenario.max_height, _radius(scenario))
    front = Frontier.of(r for r in measure(target, near) if r.height > 1)
    rows = gamma_agreement(target, [r.point for r in front.records], system)
    gap = max_gamma_gap(rows)
    logger.info(f"degree {scenario.degree} system over {len(rows)} records: max gamma gap {gap}")
    return {"degree": scenario.degree, "records": len(rows), "max_gamma_gap": gap}


def _clustered(scenario: Scenario) -> Report:
    target = _target(scenario, (0, 0, 1))
    c = Fraction(scenario.threshold) if scenario.threshold is not None else Fraction(2)
    report = line_cluster(target, cluster_box(target, scenario.max_height, c), c)
    data = {"target": format_point(target), "max_height": scenario.max_height, **report.to_dict()}
    if scenario.degree is not None:
        data["system"] = _system_agreement(target, scenario)
    return Report(data)


def _product(scenario: Scenario) -> Report:
    target = (ProjPoint((0, 1)), ProjPoint((0, 1)))
    b = scenario.max_height
    g, (r1, r2) = product_min_gamma(target, b)
    axis = axis_sequence(target, min(b, 100))
    products = sorted({str(d * h) for _, d, h in axis})
    data = {
        "target": "|".join(format_point(p) for p in target),
        "max_height": b,
        "min_off_axis_gamma": g,
        "argmin": [r1.to_row(), r2.to_row()],
        "axis_dist_height": products,
        "prediction": product_prediction(Fraction(1), Fraction(1)).to_dict(),
    }
    logger.info(f"product barrier: min off-axis gamma {g:.4f}, axis dist*H {products}")
    return Report(data)


def execute(scenario: Scenario) -> Report:
    if scenario.curve in CURVE_PRESETS:
        return _along_curve(scenario)
    if scenario.curve == "p1":
        return _on_line(scenario)
    if scenario.curve == "p2":
        return _clustered(scenario)
    return _product(scenario)
