# rapprox/predictor/fixtures.py
"""
Known subcone conclusions.

Each ConeFixture names a surface, the position of the point, the curves
through it, generators of a subcone of the nef cone and the curve (or
curves) that must come out as best at the sum of those generators.
DegreeFixture covers the "degree zero or one on every generator" checks.
The lattice fixtures pin down dual pairs of cones, printed intersection
tables and fibre multiplicities.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations, product
from typing import Optional, Sequence

from rapprox.core.errors import RapproxError
from rapprox.lattice.cones import contains, degree_profile, extremal_rays, is_dual_pair, subdivide_by_min_degree
from rapprox.lattice.fibres import FiberTree, verify_effect_cone
from rapprox.lattice.nslattice import intersect
from rapprox.lattice.presets import d_alpha, f_tree, h_tree, load_preset
from rapprox.predictor.predict import PointContext, predict_alpha

logger = logging.getLogger("predictor")


@dataclass(frozen=True)
class ConeFixture:
    name: str
    preset: str
    position: str
    catalog: tuple[str, ...]
    generators: tuple[str, ...]
    expected: tuple[str, ...]


@dataclass(frozen=True)
class DegreeFixture:
    """Every class in ``classes`` has degree 0 or 1 on every curve in ``curves``."""

    name: str
    preset: str
    classes: tuple[str, ...]
    curves: tuple[str, ...]


@dataclass(frozen=True)
class SubdivisionFixture:
    """On each min-degree cell the winning curve has degree 0 or 1 on every ray."""

    name: str
    preset: str
    position: str
    catalog: tuple[str, ...]


@dataclass(frozen=True)
class FixtureResult:
    name: str
    ok: bool
    expected: tuple[str, ...] = ()
    winners: tuple[str, ...] = ()
    alpha: Optional[str] = None
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "expected": list(self.expected),
            "winners": list(self.winners),
            "alpha": self.alpha,
            "reason": self.reason,
        }


def _fx(preset: str, position: str, catalog: str, name: str, gens: Sequence[str], expected: str) -> ConeFixture:
    return ConeFixture(
        f"{preset}/{position}/{name}",
        preset,
        position,
        tuple(catalog.split()),
        tuple(gens),
        tuple(sorted(expected.split())),
    )


# ---------------------------------------------------------------------------
# Rank three and rank four
# ---------------------------------------------------------------------------

RANK_THREE = [
    _fx("blowup_p2:2", "general", "L L1 L2", "A", ["L", "L1", "2L-E1-E2"], "L1"),
    _fx("blowup_p2:2", "L12^E1", "L12 E1", "A", ["L", "2L-E1", "3L-E1-E2"], "E1"),
    _fx("blowup_p2:2", "L12^E1", "L12 E1", "B", ["L1", "2L-E1", "2L-E1-E2", "3L-E1-E2"], "L12"),
]

CASE1 = [
    _fx("case1:2", "general", "F D0", "A", ["F", "D2", "D1", "D1'", "D0+F"], "F"),
    _fx("case1:2", "general", "F D0", "B", ["D0", "D0+F", "D1", "D1'"], "D0"),
    # n = 1 is the plane blown up at three points
    _fx("case1:1", "general", "L L1 L2 L3 F", "A1", ["L", "L1", "L1+L2", "L1+L3", "F"], "L1"),
    _fx("case1:1", "E1", "E1 L1 F", "B1", ["L", "L+L1", "L1+L2", "L1+L3", "F"], "E1"),
    _fx("case1:1", "E1", "E1 L1 F", "B1'", ["L+L1", "L1", "L1+L2", "L1+L3", "F"], "L1"),
    _fx("case1:1", "L23", "L23 L1 L", "B23", ["F", "L", "L1+L2", "L1+L3", "F+L1"], "L23"),
    _fx("case1:1", "L23", "L23 L1 L", "B23'", ["L1", "L", "L1+L2", "L1+L3", "F+L1"], "L1"),
    _fx(
        "case1:1", "E1^L12", "E1 L12", "B112",
        ["L+L1", "L+F", "L+L1+L2", "L1+L3", "L1", "L1+L2", "F"], "L12",
    ),
    _fx("case1:1", "E1^L12", "E1 L12", "B112'", ["L", "L+L1", "L+L1+L2", "L1+L3", "L+F"], "E1"),
    _fx(
        "case1:1", "E2^L12", "E2 L12", "B122",
        ["L", "L1", "L1+L3", "L+L1+L2", "L+F", "F+L1+L3"], "E2",
    ),
    _fx(
        "case1:1", "E2^L12", "E2 L12", "B122'",
        ["F", "L1", "L1+L2", "L+F", "L+L1+L2", "F+L1+L3"], "L12",
    ),
    _fx(
        "case1:1", "E2^L23", "E2 L23", "B123",
        ["L", "L1", "L1+L3", "L1+L2", "F+L", "F+L1", "F+L1+L3"], "E2",
    ),
    _fx("case1:1", "E2^L23", "E2 L23", "B123'", ["F", "F+L", "L1+L2", "F+L1", "F+L1+L3"], "L23"),
]

CASE2 = [
    _fx("case2:3", "S", "S F", "A", ["D1", "D2", "D3", "D1+F", "D2+F", "D3+F"], "S"),
    _fx("case2:3", "S", "S F", "B", ["D1+F", "D2+F", "D3+F", "F"], "F"),
    _fx("case2:3", "S^F1", "S F1", "A'", ["F", "F+D1", "D2", "D3"], "F1"),
    _fx("case2:3", "S^F1", "S F1", "B'", ["D1", "F+D1", "D2", "D3"], "S"),
    _fx("case2:3", "F1^E1", "E1 F1", "A~", ["F", "D1+D2", "D2", "D3"], "F1"),
    _fx("case2:3", "F1^E1", "E1 F1", "B~", ["F", "D1", "D1+D2", "D3"], "E1"),
    _fx("case2:1", "general", "F D1 D2 D3", "A", ["F", "D1", "F+D2", "F+D3", "F+D2+D3"], "F"),
    _fx("case2:1", "S", "S F", "AS", ["D1", "F+D1", "F+D2", "F+D3", "F+D2+D3"], "S"),
    _fx("case2:1", "S", "S F", "AS'", ["F", "F+D1", "F+D2", "F+D3"], "F"),
    _fx(
        "case2:1", "F1^E1", "E1 F1", "A1",
        ["F", "D1", "F+D3", "F+D1+D2", "F+D1+D2+D3"], "E1",
    ),
    _fx(
        "case2:1", "F1^E1", "E1 F1", "A1'",
        ["F", "F+D2", "F+D3", "F+D2+D3", "F+D1+D2", "F+D1+D2+D3"], "F1",
    ),
]

CASE3 = [
    _fx("case3:3", "S", "S F", "AS", ["F", "F+D1", "F+D2", "F+D3"], "F"),
    _fx("case3:3", "S", "S F", "AS'", ["D1", "F+D1", "D2", "F+D2", "D3", "F+D3"], "S"),
    _fx("case3:3", "S^E1", "S E1", "A1", ["F", "D1", "D2", "F+D3"], "E1"),
    _fx("case3:3", "S^E1", "S E1", "A1'", ["D1", "D2", "D3", "F+D3"], "S"),
    _fx("case3:3", "E1^E2", "E1 E2", "A2", ["F", "D1", "D3", "D2+D3"], "E2"),
    _fx("case3:3", "E1^E2", "E1 E2", "A2'", ["F", "D1", "D2", "D2+D3"], "E1"),
    _fx("case3:3", "E2^E3", "E2 E3", "A3", ["F", "D2", "D3", "D1+D2"], "E3"),
    _fx("case3:3", "E2^E3", "E2 E3", "A3'", ["F", "D1", "D3", "D2+D3"], "E2 E3"),
    _fx("case3:2", "general", "F D1", "A", ["F", "F+D1", "D2", "D3", "D1+D3"], "F"),
    _fx("case3:2", "general", "F D1", "B", ["D1", "F+D1", "D2", "D1+D3"], "D1"),
    _fx("case3:2", "S", "S F", "AS", ["D1+D3", "D2", "D3", "F+D1", "F+D2", "F+D3"], "S"),
    _fx("case3:2", "S", "S F", "AS'", ["F", "F+D1", "F+D2", "F+D3"], "F"),
    _fx("case3:2", "S", "S F", "B", ["D1", "F+D1", "D2", "D1+D3"], "S"),
    _fx("case3:2", "E3", "E3 D1", "A", ["F", "F+D1", "D2", "D3", "D1+D3"], "E3"),
    _fx("case3:2", "E3", "E3 D1", "A3", ["D2", "D1+D3", "F+D1", "D1+D2", "2D1+D3"], "E3"),
    _fx("case3:2", "E3", "E3 D1", "B3", ["D1", "F+D1", "D1+D2", "2D1+D3"], "D1"),
    _fx("case3:2", "S^E1", "S E1", "A1", ["F+D3", "D1", "D2", "D3"], "S"),
    _fx("case3:2", "S^E1", "S E1", "B1", ["F", "D1", "D2", "F+D3"], "E1"),
    _fx("case3:2", "E1^E2", "E1 E2", "A2", ["F", "D1", "D2", "D2+D3"], "E1"),
    _fx("case3:2", "E1^E2", "E1 E2", "B2", ["F", "D1", "D3", "D2+D3"], "E2"),
    _fx("case3:2", "E2^E3", "E2 E3", "A2'", ["F", "D1", "D3", "D1+D2"], "E2"),
    _fx("case3:2", "E2^E3", "E2 E3", "B2'", ["F", "D2", "D3", "D1+D2"], "E3"),
]

CASE3_MULTIPLE = [
    fx
    for n in (1, 2)
    for fx in (
        _fx(f"case3:{n},multiple", "S", "S F", "AS", ["D1", "D2", "D3", "F+D1", "F+D3", "2F+D2"], "S"),
        _fx(f"case3:{n},multiple", "S", "S F", "BS", ["F", "F+D1", "F+D3", "2F+D2"], "F"),
        _fx(f"case3:{n},multiple", "S^E1", "S E1", "A1", ["F+D1", "D2", "D3", "F"], "E1"),
        _fx(f"case3:{n},multiple", "S^E1", "S E1", "B1", ["D1", "D2", "D3", "F+D1"], "S"),
        _fx(f"case3:{n},multiple", "E1^E2", "E1 E2", "A2", ["F", "D1", "D3", "D1+D2"], "E2"),
        _fx(f"case3:{n},multiple", "E1^E2", "E1 E2", "B2", ["F", "D2", "D3", "D1+D2"], "E1"),
        _fx(f"case3:{n},multiple", "E2^E3", "E2 E3", "A3", ["F", "D1", "D2", "D2+D3"], "E3"),
        _fx(f"case3:{n},multiple", "E2^E3", "E2 E3", "B3", ["F", "D1", "D3", "D2+D3"], "E2"),
    )
]


# ---------------------------------------------------------------------------
# Four and five points
# ---------------------------------------------------------------------------

_OTHERS = (2, 3, 4)

FOUR_POINTS = [
    _fx(
        "blowup_p2:4", "general", "L1 L2 L3 L4 D L", "B",
        ["D", "D+L"] + [f"D{i}" for i in range(1, 5)] + [f"D+L{i}" for i in range(1, 5)], "D",
    ),
    _fx(
        "blowup_p2:4", "general", "L1 L2 L3 L4 D L", "B1",
        ["L", "D+L", "L1"] + [f"L1+L{j}" for j in _OTHERS] + ["D+L1"] + [f"D{j}" for j in _OTHERS], "L1",
    ),
    _fx(
        "blowup_p2:4", "E1", "E1 L1 D", "M1",
        ["L+L1", "L1"] + [f"L1+L{j}" for j in _OTHERS] + [f"D{j}" for j in _OTHERS] + ["D+L1"], "L1",
    ),
    _fx(
        "blowup_p2:4", "E1", "E1 L1 D", "N1",
        ["L", "L+L1"] + [f"L1+L{j}" for j in _OTHERS] + [f"D{j}" for j in _OTHERS] + ["D+L"], "E1",
    ),
    _fx(
        "blowup_p2:4", "E1", "E1 L1 D", "B2",
        ["L", "D+L", "L2"] + [f"L2+L{j}" for j in (1, 3, 4)] + ["D+L2"] + [f"D{j}" for j in (1, 3, 4)], "E1",
    ),
    _fx(
        "blowup_p2:4", "E1", "E1 L1 D", "J1",
        ["D1"] + [f"D{j}" for j in _OTHERS] + ["L+D"] + [f"L{j}+D" for j in _OTHERS] + ["D1+D"], "E1",
    ),
    _fx(
        "blowup_p2:4", "E1", "E1 L1 D", "J1'",
        ["D"] + [f"D{j}" for j in _OTHERS] + ["L1+D"] + [f"L{j}+D" for j in _OTHERS] + ["D1+D"], "D",
    ),
    _fx(
        "blowup_p2:4", "E1^L12", "E1 L12", "M1",
        [
            "L", "L+L1", "L2", "L3", "L4", "L1+L3", "L1+L4", "D1", "D2",
            "D3+L4", "D4+L3", "D+L3", "D+L4", "D+D1",
        ],
        "E1",
    ),
    _fx(
        "blowup_p2:4", "E1^L12", "E1 L12", "N1",
        [
            "L1", "L2", "L+L1", "L1+L3", "L1+L4", "D2", "D3", "D4", "D",
            "D3+L4", "D4+L3", "D+L3", "D+L4", "D+D1",
        ],
        "L12",
    ),
]


def _q(i: int, j: int) -> str:
    a, b = sorted((i, j))
    return f"Q{a}{b}"


_REST = (2, 3, 4, 5)
_REST_PAIRS = list(combinations(_REST, 2))


def _five_point_fixtures() -> list[ConeFixture]:
    preset = "blowup_p2:5"
    m1 = (
        ["L", "L1"]
        + [f"L1+L{i}" for i in _REST]
        + [f"L1+C{i}" for i in _REST]
        + [_q(i, j) for i, j in _REST_PAIRS]
        + ["B1"]
        + [f"L+C{i}" for i in _REST]
        + ["L1+C1"]
        + [f"B1+L{i}" for i in _REST]
    )
    n1 = (
        ["C1"]
        + [f"C1+L{i}" for i in _REST]
        + [f"C1+{_q(1, i)}" for i in _REST]
        + [_q(1, i) for i in _REST]
        + [f"B{i}" for i in _REST]
        + ["L+C1", "L1+C1"]
        + [f"C1+{_q(i, j)}" for i, j in _REST_PAIRS]
        + ["B2+C2"]
    )
    r1 = (
        ["L", "L1"]
        + [f"L1+L{j}" for j in _REST]
        + [_q(j, l) for j, l in _REST_PAIRS]
        + [f"L1+C{j}" for j in _REST]
        + ["L1+B1"]
        + [f"L+C{j}" for j in _REST]
        + ["L+L1+C1"]
    )
    r1p = (
        [_q(j, l) for j, l in _REST_PAIRS]
        + ["L1+C1"]
        + [f"L1+C{j}" for j in _REST]
        + ["B1"]
        + [f"B1+L{j}" for j in _REST]
        + ["B1+L1", "L+L1+C1"]
        + [f"L+C{j}" for j in _REST]
    )
    cross = [f"L{j}+C{l}" for j in _REST for l in _REST if j != l]
    j1 = (
        ["L+L1", "L1"]
        + [f"L1+L{j}" for j in _REST]
        + [_q(j, l) for j, l in _REST_PAIRS]
        + [f"L1+C{j}" for j in _REST]
        + ["L1+B1"]
    )
    j2 = (
        ["L"]
        + [f"L{j}" for j in _REST]
        + ["L+L1", "C1"]
        + [f"L1+L{j}" for j in _REST]
        + [_q(1, j) for j in _REST]
        + [_q(j, l) for j, l in _REST_PAIRS]
        + cross
        + [f"{_q(1, j)}+C{j}" for j in _REST]
        + [f"L{j}+B{j}" for j in _REST]
    )
    j3 = (
        ["L1+B1", "C1"]
        + [_q(j, l) for j, l in _REST_PAIRS]
        + [f"L1+C{j}" for j in _REST]
        + cross
        + [f"B{j}" for j in _REST]
        + [f"{_q(1, j)}+C{j}" for j in _REST]
        + [f"L{j}+B{j}" for j in _REST]
    )
    general = "L1 L2 L3 L4 L5 C1 C2 C3 C4 C5 L"
    return [
        _fx(preset, "general", general, "M1", m1, "L1"),
        _fx(preset, "general", general, "N1", n1, "C1"),
        _fx(preset, "E", "E L1 L2 L3 L4 L5 L", "R1", r1, "L1"),
        _fx(preset, "E", "E L1 L2 L3 L4 L5 L", "R1'", r1p, "E"),
        _fx(preset, "E", "E L1 L2 L3 L4 L5 L", "N1", n1, "E"),
        _fx(preset, "E^E1", "E E1 L1", "J1", j1, "L1"),
        _fx(preset, "E^E1", "E E1 L1", "J2", j2, "E1"),
        _fx(preset, "E^E1", "E E1 L1", "J3", j3, "E"),
    ]


FIVE_POINTS = _five_point_fixtures()

# L is the (-2)-line, E the residual cubic; both pass through the point
K3 = [
    _fx("k3", "L", "E L", "A", ["D", "E+L"], "L"),
    _fx("k3", "L", "E L", "B", ["D"] + ["E"] * 8, "E"),
]

CONE_FIXTURES: list[ConeFixture] = (
    RANK_THREE + CASE1 + CASE2 + CASE3 + CASE3_MULTIPLE + FOUR_POINTS + FIVE_POINTS + K3
)

DEGREE_FIXTURES: list[DegreeFixture] = [
    DegreeFixture(
        "case1:2/general/nine",
        "case1:2",
        ("F", "D0", "D1", "D1'", "D2", "F+D0", "F+D1", "F+D1'", "F+D2+D0"),
        ("S", "E1", "E2", "F1", "F2"),
    ),
]

SUBDIVISION_FIXTURES: list[SubdivisionFixture] = [
    SubdivisionFixture(f"simplefibres:{n},{k}/{pos}", f"simplefibres:{n},{k}", pos, cat)
    for n, k in ((3, 1), (3, 2), (4, 3))
    for pos, cat in (("S^F1", ("S", "F1")), ("E1^F1", ("E1", "F1")))
]


# ---------------------------------------------------------------------------
# Lattice fixtures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TableFixture:
    name: str
    preset: str
    labels: tuple[str, ...]
    expected: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class MultiplicityFixture:
    name: str
    tree: FiberTree
    expected: tuple[int, ...]


# (preset, number of extremal nef rays)
DUAL_PAIRS: list[tuple[str, int]] = (
    [(f"hirzebruch:{n}", 2) for n in range(6)]
    + [(f"simplefibres:{n},{k}", 2 ** k + 1) for n in range(2, 7) for k in range(n)]
    + [("blowup_p2:0", 1), ("blowup_p2:1", 2), ("blowup_p2:2", 3), ("blowup_p2:3", 5)]
    + [("blowup_p2:4", 10), ("blowup_p2:5", 26), ("case1:2", 5)]
    + [(f"case2:{n}", 4) for n in range(1, 5)]
    + [(f"case3:{n}", 4) for n in range(2, 5)]
    + [(f"case3:{n},multiple", 4) for n in range(1, 5)]
    + [("k3", 2), ("fibre_tree:h,3", 4), ("fibre_tree:f,3", 4)]
)


def _t(rows: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(r) for r in rows)


_FOUR = ("L", "L1", "L2", "L3", "L4", "D1", "D2", "D3", "D4", "D")

TABLE_FIXTURES: list[TableFixture] = [
    TableFixture(
        "blowup_p2:3/table",
        "blowup_p2:3",
        ("L", "L1", "L2", "L3", "F"),
        _t([[1, 1, 1, 1, 2], [1, 0, 1, 1, 1], [1, 1, 0, 1, 1], [1, 1, 1, 0, 1], [2, 1, 1, 1, 1]]),
    ),
    TableFixture(
        "blowup_p2:4/table",
        "blowup_p2:4",
        _FOUR,
        _t([
            [1, 1, 1, 1, 1, 2, 2, 2, 2, 2],
            [1, 0, 1, 1, 1, 2, 1, 1, 1, 1],
            [1, 1, 0, 1, 1, 1, 2, 1, 1, 1],
            [1, 1, 1, 0, 1, 1, 1, 2, 1, 1],
            [1, 1, 1, 1, 0, 1, 1, 1, 2, 1],
            [2, 2, 1, 1, 1, 1, 2, 2, 2, 1],
            [2, 1, 2, 1, 1, 2, 1, 2, 2, 1],
            [2, 1, 1, 2, 1, 2, 2, 1, 2, 1],
            [2, 1, 1, 1, 2, 2, 2, 2, 1, 1],
            [2, 1, 1, 1, 1, 1, 1, 1, 1, 0],
        ]),
    ),
    TableFixture(
        "case1:2/table",
        "case1:2",
        ("F", "D2", "D1", "D1'", "D0"),
        _t([[0, 1, 1, 1, 1], [1, 2, 2, 2, 2], [1, 2, 1, 2, 1], [1, 2, 2, 1, 1], [1, 2, 1, 1, 0]]),
    ),
]
TABLE_FIXTURES += [
    TableFixture(
        f"case2:{n}/table",
        f"case2:{n}",
        ("F", "D1", "D2", "D3"),
        _t([[0, 1, 1, 1], [1, n, n, n], [1, n, n - 1, n], [1, n, n, n - 1]]),
    )
    for n in range(1, 5)
]
TABLE_FIXTURES += [
    TableFixture(
        f"case3:{n}/table",
        f"case3:{n}",
        ("F", "D1", "D2", "D3"),
        _t([[0, 1, 1, 1], [1, n - 2, n - 1, n], [1, n - 1, n - 1, n], [1, n, n, n]]),
    )
    for n in range(2, 5)
]
TABLE_FIXTURES += [
    TableFixture(
        f"case3:{n},multiple/table",
        f"case3:{n},multiple",
        ("F", "D1", "D2", "D3"),
        _t([[0, 1, 2, 1], [1, n, 2 * n, n], [2, 2 * n, 4 * n - 2, 2 * n - 1], [1, n, 2 * n - 1, n - 1]]),
    )
    for n in range(1, 5)
]

MULTIPLICITY_FIXTURES: list[MultiplicityFixture] = [
    MultiplicityFixture("h_tree:4/multiplicities", h_tree(4), (1, 2, 1)),
    MultiplicityFixture("f_tree:4/multiplicities", f_tree(4), (1, 1, 1)),
]

# D_a . D_b = n - a.b on the simple-fibre surfaces
SIMPLE_FIBRE_RANGE: list[tuple[int, int]] = [(n, k) for n in range(2, 7) for k in range(n)]


# ---------------------------------------------------------------------------
# Runners
# ---------------------------------------------------------------------------

def run_cone_fixture(fx: ConeFixture) -> FixtureResult:
    try:
        preset = load_preset(fx.preset)
        gens = preset.classes(fx.generators)
        outside = [g for g, c in zip(fx.generators, gens) if not contains(preset.nef_cone, c)]
        if outside:
            return FixtureResult(fx.name, False, fx.expected, reason=f"not nef: {outside}")
        total = preset.lattice.zero()
        for g in gens:
            total = total + g
        ctx = PointContext.from_preset(preset, fx.catalog)
        pred = predict_alpha(ctx, total)
    except RapproxError as e:
        return FixtureResult(fx.name, False, fx.expected, reason=str(e.detail))
    ok = pred.winners == fx.expected
    if not ok:
        logger.warning(f"{fx.name}: expected {list(fx.expected)}, got {list(pred.winners)}")
    return FixtureResult(fx.name, ok, fx.expected, pred.winners, str(pred.alpha))


def run_degree_fixture(fx: DegreeFixture) -> FixtureResult:
    preset = load_preset(fx.preset)
    bad = [
        (a, c)
        for a in fx.classes
        for c in fx.curves
        if intersect(preset.cls(a), preset.cls(c)) not in (0, 1)
    ]
    return FixtureResult(fx.name, not bad, reason=f"degrees outside 0/1: {bad}" if bad else "")


def run_subdivision_fixture(fx: SubdivisionFixture) -> FixtureResult:
    preset = load_preset(fx.preset)
    cells = subdivide_by_min_degree(preset.nef_cone, preset.classes(fx.catalog))
    bad = []
    for cell in cells:
        profile = degree_profile(cell.cone, cell.candidate)
        if any(x not in (0, 1) for x in profile):
            bad.append((fx.catalog[cell.index], profile))
    ok = not bad and len(cells) == len(fx.catalog)
    return FixtureResult(
        fx.name,
        ok,
        fx.catalog,
        tuple(fx.catalog[c.index] for c in cells),
        reason=f"profiles {bad}" if bad else "",
    )


def run_dual_pair(key: str, rays: int) -> FixtureResult:
    name = f"{key}/dual-pair"
    try:
        preset = load_preset(key)
        paired = is_dual_pair(preset.effective_cone, preset.nef_cone)
        count = len(extremal_rays(preset.nef_cone))
    except RapproxError as e:
        return FixtureResult(name, False, reason=str(e.detail))
    ok = paired and count == rays
    return FixtureResult(name, ok, reason="" if ok else f"dual pair {paired}, {count} nef rays, expected {rays}")


def run_table_fixture(fx: TableFixture) -> FixtureResult:
    got = load_preset(fx.preset).intersection_table(fx.labels)
    ok = _t(got) == fx.expected
    if not ok:
        logger.warning(f"{fx.name}: table {got} differs")
    return FixtureResult(fx.name, ok, reason="" if ok else f"got {got}")


def run_multiplicity_fixture(fx: MultiplicityFixture) -> FixtureResult:
    report = verify_effect_cone(fx.tree)
    bad = [k for k, v in report.items() if v is False]
    if fx.tree.multiplicities != fx.expected:
        bad.append(f"multiplicities {fx.tree.multiplicities}")
    return FixtureResult(fx.name, not bad, reason=f"failed: {bad}" if bad else "")


def run_simple_fibre_identity(n: int, k: int) -> FixtureResult:
    preset = load_preset(f"simplefibres:{n},{k}")
    alphas = list(product((0, 1), repeat=k))
    bad = [
        (a, b)
        for a in alphas
        for b in alphas
        if intersect(d_alpha(preset, a), d_alpha(preset, b)) != n - sum(x * y for x, y in zip(a, b))
    ]
    return FixtureResult(f"simplefibres:{n},{k}/d-alpha", not bad, reason=f"pairs {bad[:4]}" if bad else "")


def run_all() -> list[FixtureResult]:
    results = [run_cone_fixture(fx) for fx in CONE_FIXTURES]
    results += [run_degree_fixture(fx) for fx in DEGREE_FIXTURES]
    results += [run_subdivision_fixture(fx) for fx in SUBDIVISION_FIXTURES]
    results += [run_dual_pair(key, rays) for key, rays in DUAL_PAIRS]
    results += [run_table_fixture(fx) for fx in TABLE_FIXTURES]
    results += [run_multiplicity_fixture(fx) for fx in MULTIPLICITY_FIXTURES]
    results += [run_simple_fibre_identity(n, k) for n, k in SIMPLE_FIBRE_RANGE]
    failed = sum(1 for r in results if not r.ok)
    logger.info(f"ran {len(results)} fixtures, {failed} failed")
    return results


def presets_used() -> set[str]:
    keys = {fx.preset for fx in CONE_FIXTURES}
    keys |= {fx.preset for fx in DEGREE_FIXTURES}
    keys |= {fx.preset for fx in SUBDIVISION_FIXTURES}
    keys |= {key for key, _ in DUAL_PAIRS}
    keys |= {fx.preset for fx in TABLE_FIXTURES}
    keys |= {f"simplefibres:{n},{k}" for n, k in SIMPLE_FIBRE_RANGE}
    return keys
