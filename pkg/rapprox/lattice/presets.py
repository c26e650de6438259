# rapprox/lattice/presets.py
"""
Catalogue of surface lattices.

Each preset is a lattice plus a table of named classes, the labels that
generate its effective and nef cones, and the label order its intersection
table is printed in. Presets are addressed by strings such as
``"blowup_p2:4"``, ``"simplefibres:3,2"`` or ``"case3:2,multiple"``.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations, product
from typing import Callable, Optional, Sequence

from rapprox.core.errors import PresetError
from rapprox.lattice.cones import Cone, sample_interior
from rapprox.lattice.fibres import (
    FiberNode,
    FiberTree,
    compute_fiber_class,
    fiber_tree_lattice,
)
from rapprox.lattice.nslattice import (
    DivisorClass,
    NSLattice,
    Rebased,
    class_from_expression,
    dual_basis,
    intersect,
    rebase,
)

logger = logging.getLogger("lattice")


@dataclass(frozen=True, eq=False)
class Preset:
    key: str
    lattice: NSLattice
    named: dict[str, DivisorClass]
    effective: tuple[str, ...]
    nef: tuple[str, ...]
    table: tuple[str, ...] = ()
    tree: Optional[FiberTree] = field(default=None)

    def cls(self, expr: str) -> DivisorClass:
        """Resolve a label or a linear expression over labels."""
        if expr in self.named:
            return self.named[expr]
        return class_from_expression(self.lattice, expr, self.named)

    def classes(self, exprs: Sequence[str]) -> list[DivisorClass]:
        return [self.cls(e) for e in exprs]

    @cached_property
    def effective_cone(self) -> Cone:
        return Cone.from_classes(self.lattice, self.classes(self.effective))

    @cached_property
    def nef_cone(self) -> Cone:
        return Cone.from_classes(self.lattice, self.classes(self.nef))

    @property
    def effective_classes(self) -> list[DivisorClass]:
        return self.classes(self.effective)

    def ample_sample(self) -> DivisorClass:
        return sample_interior(self.nef_cone)

    def intersection_table(self, labels: Optional[Sequence[str]] = None) -> list[list[int]]:
        order = list(labels) if labels is not None else list(self.table or self.nef)
        cs = self.classes(order)
        return [[intersect(a, b) for b in cs] for a in cs]

    def label_of(self, c: DivisorClass) -> Optional[str]:
        return next((k for k, v in self.named.items() if v == c), None)

    def rebased(self, labels: Sequence[str]) -> Rebased:
        return rebase(self.lattice, labels, self.classes(labels))

    def to_dict(self) -> dict:
        return {
            "key": self.key,
            "lattice": self.lattice.to_dict(),
            "named": {k: [str(x) for x in v.coeffs] for k, v in sorted(self.named.items())},
            "effective": list(self.effective),
            "nef": list(self.nef),
            "table": list(self.table),
        }


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def _gram(rows: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(r) for r in rows)


def _make(
    key: str,
    labels: Sequence[str],
    gram: Sequence[Sequence[int]],
    defs: Sequence[tuple[str, str]],
    effective: Sequence[str],
    nef: Sequence[str],
    table: Sequence[str] = (),
) -> Preset:
    lat = NSLattice(tuple(labels), _gram(gram), name=key)
    named: dict[str, DivisorClass] = {lab: lat[lab] for lab in labels}
    for label, expr in defs:
        named[label] = class_from_expression(lat, expr, named)
    preset = Preset(key, lat, named, tuple(effective), tuple(nef), tuple(table))
    logger.debug(f"built preset {key} of rank {lat.rank} with {len(named)} named classes")
    return preset


def _require(ok: bool, name: str, **args) -> None:
    if not ok:
        raise PresetError(f"parameters out of range for {name}", preset=name, **args)


def _diag(first: int, rest: int, count: int) -> list[list[int]]:
    r = count + 1
    return [[(first if i == 0 else rest) if i == j else 0 for j in range(r)] for i in range(r)]


# ---------------------------------------------------------------------------
# Minimal and simple-fibre surfaces
# ---------------------------------------------------------------------------

def hirzebruch(n: int) -> Preset:
    _require(n >= 0, "hirzebruch", n=n)
    return _make(
        f"hirzebruch:{n}",
        ("S", "F"),
        [[-n, 1], [1, 0]],
        [("D", f"S+{n}F" if n else "S")],
        ("S", "F"),
        ("F", "D"),
    )


def _bits(alpha: Sequence[int]) -> str:
    return "D" + "".join(str(a) for a in alpha)


def simplefibres(n: int, k: int) -> Preset:
    """H_n blown up at k points in distinct fibres, off the negative section."""
    _require(n >= 2 and 0 <= k < n and k <= 8, "simplefibres", n=n, k=k)
    es = [f"E{i}" for i in range(1, k + 1)]
    labels = ["S", "F"] + es
    gram = _diag(-n, -1, k + 1)
    gram[1][1] = 0
    gram[0][1] = gram[1][0] = 1
    defs = [(f"F{i}", f"F-E{i}") for i in range(1, k + 1)]
    nef = ["F"]
    for alpha in product((0, 1), repeat=k):
        expr = f"S+{n}F" + "".join(f"-E{i + 1}" for i, a in enumerate(alpha) if a)
        defs.append((_bits(alpha), expr))
        nef.append(_bits(alpha))
    eff = ["S"] + es + [f"F{i}" for i in range(1, k + 1)]
    return _make(f"simplefibres:{n},{k}", labels, gram, defs, eff, nef)


def d_alpha(preset: Preset, alpha: Sequence[int]) -> DivisorClass:
    return preset.named[_bits(alpha)]


# ---------------------------------------------------------------------------
# Blowups of the plane
# ---------------------------------------------------------------------------

def blowup_p2(r: int) -> Preset:
    """P^2 blown up at r <= 5 points in general position."""
    _require(0 <= r <= 5, "blowup_p2", r=r)
    idx = range(1, r + 1)
    es = [f"E{i}" for i in idx]
    labels = ["L"] + es
    gram = _diag(1, -1, r)
    pairs = list(combinations(idx, 2))
    defs = [(f"L{i}", f"L-E{i}") for i in idx]
    defs += [(f"L{i}{j}", f"L-E{i}-E{j}") for i, j in pairs]
    lines = [f"L{i}{j}" for i, j in pairs]
    single = [f"L{i}" for i in idx]
    total = "-".join(["2L"] + es)
    key = f"blowup_p2:{r}"
    if r == 0:
        return _make(key, labels, gram, defs, ("L",), ("L",), ("L",))
    if r <= 2:
        eff = es + lines if r == 2 else ["E1", "L1"]
        nef = ["L"] + single
        return _make(key, labels, gram, defs, eff, nef, nef)
    if r == 3:
        defs.append(("F", total))
        nef = ["L"] + single + ["F"]
        return _make(key, labels, gram, defs, es + lines, nef, nef)
    if r == 4:
        defs.append(("D", total))
        defs += [(f"D{i}", f"D+E{i}") for i in idx]
        nef = ["L"] + single + [f"D{i}" for i in idx] + ["D"]
        return _make(key, labels, gram, defs, es + lines, nef, nef)
    # five points: E is the conic through all of them
    defs.append(("E", total))
    defs += [(f"Q{i}{j}", f"E+E{i}+E{j}") for i, j in pairs]
    defs += [(f"C{i}", f"E+E{i}") for i in idx]
    defs += [(f"B{i}", f"E+L{i}") for i in idx]
    nef = ["L"] + single + [f"Q{i}{j}" for i, j in pairs] + [f"C{i}" for i in idx] + [f"B{i}" for i in idx]
    return _make(key, labels, gram, defs, es + lines + ["E"], nef, nef)


# ---------------------------------------------------------------------------
# Picard rank four
# ---------------------------------------------------------------------------

def case1(n: int) -> Preset:
    """Two reducible fibres, each a pair of (-1)-curves."""
    _require(n >= 1, "case1", n=n)
    if n == 1:
        return blowup_p2(3)
    return _make(
        f"case1:{n}",
        ("F", "E2", "F2", "S"),
        [[0, 0, 0, 1], [0, -1, 0, 0], [0, 0, -1, 0], [1, 0, 0, -n]],
        [
            ("E1", "F-E2"),
            ("F1", "F-F2"),
            ("D2", f"{n}F+S"),
            ("D1", f"{n}F-E2+S"),
            ("D1'", f"{n}F-F2+S"),
            ("D0", f"{n}F-E2-F2+S"),
        ],
        ("S", "E1", "E2", "F1", "F2"),
        ("F", "D2", "D1", "D1'", "D0"),
        ("F", "D2", "D1", "D1'", "D0"),
    )


def case2(n: int) -> Preset:
    """One fibre of three components, a (-2)-curve F1 meeting two (-1)-curves."""
    _require(n >= 1, "case2", n=n)
    return _make(
        f"case2:{n}",
        ("S", "E1", "E2", "F"),
        [[-n, 0, 0, 1], [0, -1, 0, 0], [0, 0, -1, 0], [1, 0, 0, 0]],
        [
            ("F1", "F-E1-E2"),
            ("D1", f"{n}F+S"),
            ("D2", f"{n}F+S-E1"),
            ("D3", f"{n}F+S-E2"),
        ],
        ("S", "F1", "E1", "E2"),
        ("F", "D1", "D2", "D3"),
        ("F", "D1", "D2", "D3"),
    )


def case3(n: int, multiple: bool = False) -> Preset:
    """
    One fibre of three components in a chain.

    With ``multiple`` the middle component has multiplicity two.
    """
    if multiple:
        _require(n >= 1, "case3", n=n, multiple=True)
        gram = [[-n, 0, 0, 1], [0, -1, 1, 0], [0, 1, -2, 0], [1, 0, 0, 0]]
        defs = [
            ("E1", "F-2E2-E3"),
            ("D1", f"S+{n}F"),
            ("D2", f"2S+{2 * n}F-2E2-E3"),
            ("D3", f"S+{n}F-E2-E3"),
        ]
        key = f"case3:{n},multiple"
    else:
        _require(n >= 2, "case3", n=n, multiple=False)
        gram = [[-n, 0, 0, 1], [0, -2, 1, 0], [0, 1, -1, 0], [1, 0, 0, 0]]
        defs = [
            ("E1", "F-E2-E3"),
            ("D1", f"{n}F+S-E2-2E3"),
            ("D2", f"{n}F+S-E2-E3"),
            ("D3", f"{n}F+S"),
        ]
        key = f"case3:{n}"
    return _make(
        key,
        ("S", "E2", "E3", "F"),
        gram,
        defs,
        ("S", "E1", "E2", "E3"),
        ("F", "D1", "D2", "D3"),
        ("F", "D1", "D2", "D3"),
    )


# ---------------------------------------------------------------------------
# Quartic K3 with a line, and explicit fibre trees
# ---------------------------------------------------------------------------

def k3_quartic_line() -> Preset:
    """E the residual plane cubic of a hyperplane through the line L."""
    return _make(
        "k3",
        ("E", "L"),
        [[0, 3], [3, -2]],
        [("D", "2E+3L")],
        ("E", "L"),
        ("E", "D"),
    )


def h_tree(n: int) -> FiberTree:
    """Chain (-2)-(-1)-(-2) with the (-1)-curve of multiplicity two."""
    return FiberTree(
        (FiberNode("E1", -2), FiberNode("E2", -1, 0), FiberNode("E3", -2, 1)),
        section_self_intersection=-n,
    )


def f_tree(n: int) -> FiberTree:
    """A (-2)-curve meeting the section and two (-1)-curves."""
    return FiberTree(
        (FiberNode("F1", -2), FiberNode("E1", -1, 0), FiberNode("E2", -1, 0)),
        section_self_intersection=-n,
    )


def fibre_tree(tree: FiberTree) -> Preset:
    lat = fiber_tree_lattice(tree)
    named: dict[str, DivisorClass] = {lab: lat[lab] for lab in lat.labels}
    named["F"] = compute_fiber_class(tree, lat)
    duals = dual_basis(lat)
    for k, d in enumerate(duals):
        named[f"D{k}"] = d
    nef = tuple(f"D{k}" for k in range(lat.rank))
    key = "fibre_tree:" + json.dumps(tree.to_dict(), sort_keys=True, separators=(",", ":"))
    return Preset(key, lat, named, lat.labels, nef, nef, tree)


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

def _ints(name: str, args: list[str], count: int) -> list[int]:
    if len(args) != count:
        raise PresetError(f"{name} takes {count} integer argument(s)", preset=name, args=args)
    try:
        return [int(a) for a in args]
    except ValueError:
        raise PresetError(f"{name} takes integer arguments", preset=name, args=args)


def _parse_case3(args: list[str]) -> Preset:
    multiple = bool(args) and args[-1] == "multiple"
    nums = args[:-1] if multiple else args
    return case3(*_ints("case3", nums, 1), multiple=multiple)


def _parse_tree(rest: str) -> Preset:
    if rest.lstrip().startswith("{"):
        try:
            data = json.loads(rest)
        except json.JSONDecodeError as e:
            raise PresetError("fibre tree is not valid JSON", preset="fibre_tree", reason=str(e))
        return fibre_tree(FiberTree.from_dict(data))
    shape, _, arg = rest.partition(",")
    builders = {"h": h_tree, "f": f_tree}
    if shape not in builders:
        raise PresetError("fibre tree shape is h, f or a JSON tree", preset="fibre_tree", shape=shape)
    (n,) = _ints("fibre_tree", [arg] if arg else [], 1)
    _require(n >= 1, "fibre_tree", n=n)
    return fibre_tree(builders[shape](n))


_PARSERS: dict[str, Callable[[str], Preset]] = {
    "hirzebruch": lambda rest: hirzebruch(*_ints("hirzebruch", _split(rest), 1)),
    "simplefibres": lambda rest: simplefibres(*_ints("simplefibres", _split(rest), 2)),
    "blowup_p2": lambda rest: blowup_p2(*_ints("blowup_p2", _split(rest), 1)),
    "case1": lambda rest: case1(*_ints("case1", _split(rest), 1)),
    "case2": lambda rest: case2(*_ints("case2", _split(rest), 1)),
    "case3": lambda rest: _parse_case3(_split(rest)),
    "k3": lambda rest: k3_quartic_line() if not rest else _no_args("k3", rest),
    "fibre_tree": _parse_tree,
}

PRESET_NAMES: tuple[str, ...] = tuple(_PARSERS)


def _split(rest: str) -> list[str]:
    return [a.strip() for a in rest.split(",")] if rest else []


def _no_args(name: str, rest: str) -> Preset:
    raise PresetError(f"{name} takes no arguments", preset=name, args=rest)


@lru_cache(maxsize=128)
def load_preset(text: str) -> Preset:
    """``name`` or ``name:args``; arguments are comma separated."""
    name, _, rest = text.strip().partition(":")
    parser = _PARSERS.get(name)
    if parser is None:
        raise PresetError(f"unknown preset {name!r}", preset=name, known=list(PRESET_NAMES))
    preset = parser(rest)
    logger.info(f"loaded preset {preset.key}")
    return preset


def preset_family(key: str) -> str:
    return key.partition(":")[0]
