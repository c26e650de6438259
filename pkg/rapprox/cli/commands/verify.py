# rapprox/cli/commands/verify.py
"""
Verification suites.

``fixtures`` runs the fixture catalogue and asserts that every preset family
was exercised. ``properties`` runs seeded randomized checks on fibre trees,
plane linear systems, Cox heights, enumeration, counting and distances.
"""
from __future__ import annotations

import argparse
import logging
import random
from itertools import product
from typing import Callable

from rapprox.approx.cluster import dist_height_floor
from rapprox.approx.enumerate import count_by_enumeration, counting_function, enumerate_p1, enumerate_p2
from rapprox.cli.report import Report
from rapprox.cli.scenario import Scenario
from rapprox.core.errors import RapproxError
from rapprox.geometry.projective import ProjPoint, distance, height, normalize, permute
from rapprox.geometry.surfaces import (
    HirzebruchPoint,
    cox_products_contain,
    height_via_system,
    linear_system_basis,
    random_configuration,
)
from rapprox.lattice.fibres import random_fiber_tree, verify_inductive_step, verify_multiplegens
from rapprox.lattice.presets import PRESET_NAMES, preset_family
from rapprox.predictor.fixtures import FixtureResult, presets_used, run_all

logger = logging.getLogger("cli")

RESULT_COLUMNS = ("name", "ok", "expected", "winners", "alpha", "reason")

SEED = 20240601


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--suite", choices=("fixtures", "properties"), default="fixtures")


def scenario_fields(args: argparse.Namespace) -> dict:
    return {"suite": args.suite}


# ---------------------------------------------------------------------------
# Fixture suite
# ---------------------------------------------------------------------------

def coverage_result() -> FixtureResult:
    covered = {preset_family(k) for k in presets_used()}
    missing = sorted(set(PRESET_NAMES) - covered)
    return FixtureResult("coverage/presets", not missing, reason=f"never exercised: {missing}" if missing else "")


def fixture_suite() -> list[FixtureResult]:
    return run_all() + [coverage_result()]


# ---------------------------------------------------------------------------
# Property suite
# ---------------------------------------------------------------------------

def _check(name: str, fn: Callable[[], tuple[bool, str]]) -> FixtureResult:
    try:
        ok, reason = fn()
    except RapproxError as e:
        return FixtureResult(name, False, reason=str(e.detail))
    return FixtureResult(name, ok, reason="" if ok else reason)


def _fibre_trees(rng: random.Random, count: int = 50) -> tuple[bool, str]:
    for k in range(count):
        m = rng.randint(1, 8)
        tree = random_fiber_tree(rng, m, m + rng.randint(1, 3))
        for i, node in enumerate(tree.nodes):
            if node.parent is None:
                continue
            ok, witness = verify_multiplegens(tree, i, node.parent)
            if not ok:
                return False, f"tree {k}: components {i}, {node.parent} give {witness}"
        for t in tree.leaves():
            if t and tree.nodes[t].self_intersection == -1 and len(tree.neighbours(t)) <= 2:
                if not verify_inductive_step(tree, t):
                    return False, f"tree {k}: blowdown of component {t}"
    return True, ""


def _naive(n: int, b: int) -> set[ProjPoint]:
    return {normalize(v) for v in product(range(-b, b + 1), repeat=n + 1) if any(v)}


def _enumeration_oracle() -> tuple[bool, str]:
    for b in (1, 5, 30):
        if set(enumerate_p1(b)) != _naive(1, b) or len(enumerate_p1(b)) != len(_naive(1, b)):
            return False, f"P^1 at B = {b}"
    for b in (1, 4, 10):
        if set(enumerate_p2(b)) != _naive(2, b) or len(enumerate_p2(b)) != len(_naive(2, b)):
            return False, f"P^2 at B = {b}"
    return True, ""


def _counting() -> tuple[bool, str]:
    for n, b in ((1, 1), (1, 7), (1, 20), (2, 1), (2, 6)):
        if counting_function(n, b) != count_by_enumeration(n, b):
            return False, f"closed form differs from enumeration for n = {n}, B = {b}"
    r1 = counting_function(1, 1000) / counting_function(1, 500)
    r2 = counting_function(2, 200) / counting_function(2, 100)
    if abs(r1 - 4) > 0.1 or abs(r2 - 8) > 0.2:
        return False, f"doubling ratios {r1:.3f}, {r2:.3f}"
    return True, ""


def _distances(rng: random.Random, count: int = 200) -> tuple[bool, str]:
    for _ in range(count):
        n = rng.choice((1, 2, 3))
        p = normalize([rng.randint(-9, 9) for _ in range(n)] + [rng.randint(1, 9)])
        q = normalize([rng.randint(-9, 9) for _ in range(n)] + [rng.randint(1, 9)])
        perm = rng.sample(range(n + 1), n + 1)
        if distance(p, q) != distance(q, p) or not 0 <= distance(p, q) <= 1:
            return False, f"distance of {p}, {q}"
        if distance(permute(p, perm), permute(q, perm)) != distance(p, q):
            return False, f"permutation {perm} moves distance of {p}, {q}"
        if height(permute(p, perm)) != height(p) or (distance(p, q) == 0) != (p == q):
            return False, f"height or identity of {p}, {q}"
    return True, ""


def _linear_systems(rng: random.Random, count: int = 200) -> tuple[bool, str]:
    for k in range(count):
        pts = random_configuration(rng, rng.randint(1, 5))
        a = rng.randint(1, 4)
        system = linear_system_basis(a, [(p, 1) for p in pts])
        if system.non_generic:
            return False, f"configuration {k}: degree {a} through {[str(p) for p in pts]}"
    lines = linear_system_basis(1, [])
    bad = next((q for q in enumerate_p2(4) if height_via_system(q, lines) != height(q)), None)
    if bad is not None:
        return False, f"lines change the height of {bad}"
    return True, ""


def _cox_heights(rng: random.Random, count: int = 50) -> tuple[bool, str]:
    for _ in range(count):
        point = HirzebruchPoint.make(
            rng.randint(0, 3),
            (rng.randint(1, 9), rng.randint(-9, 9)),
            (rng.randint(1, 9), rng.randint(-9, 9)),
        )
        for m in range(4):
            if not cox_products_contain(point, (1, 0), (m, 1)):
                return False, f"sections of S+{m + 1}F at {point} are not products"
    return True, ""


def property_suite(seed: int = SEED) -> list[FixtureResult]:
    rng = random.Random(seed)
    results = [
        _check("properties/fibre-trees", lambda: _fibre_trees(rng)),
        _check("properties/enumeration-oracle", _enumeration_oracle),
        _check("properties/counting", _counting),
        _check("properties/distances", lambda: _distances(rng)),
        _check("properties/line-floor", lambda: (dist_height_floor(200) == 1, "min dist*H on P^1 is not 1")),
        _check("properties/linear-systems", lambda: _linear_systems(rng)),
        _check("properties/cox-heights", lambda: _cox_heights(rng)),
    ]
    logger.info(f"ran {len(results)} property checks with seed {seed}")
    return results


def execute(scenario: Scenario) -> Report:
    results = fixture_suite() if scenario.suite == "fixtures" else property_suite()
    failed = [r.name for r in results if not r.ok]
    for name in failed:
        logger.warning(f"failed: {name}")
    data = {
        "suite": scenario.suite,
        "total": len(results),
        "failed": failed,
        "results": [r.to_dict() for r in results],
    }
    rows = [
        {**r.to_dict(), "expected": " ".join(r.expected), "winners": " ".join(r.winners)} for r in results
    ]
    return Report(data, rows, RESULT_COLUMNS, ok=not failed)
