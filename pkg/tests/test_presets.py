# tests/test_presets.py
from __future__ import annotations

import pytest

from rapprox.core.errors import PresetError
from rapprox.lattice.nslattice import has_hodge_signature, intersect
from rapprox.lattice.presets import PRESET_NAMES, d_alpha, load_preset, preset_family


def test_registry():
    assert PRESET_NAMES == (
        "hirzebruch", "simplefibres", "blowup_p2", "case1", "case2", "case3", "k3", "fibre_tree",
    )


@pytest.mark.parametrize(
    "key, rank, nef",
    [
        ("hirzebruch:0", 2, 2),
        ("simplefibres:3,2", 4, 5),
        ("blowup_p2:4", 5, 10),
        ("blowup_p2:5", 6, 26),
        ("case1:3", 4, 5),
        ("case2:2", 4, 4),
        ("case3:2", 4, 4),
        ("case3:1,multiple", 4, 4),
        ("k3", 2, 2),
        ("fibre_tree:f,3", 4, 4),
    ],
)
def test_shapes(key, rank, nef):
    preset = load_preset(key)
    assert preset.lattice.rank == rank
    assert len(preset.nef) == nef
    assert has_hodge_signature(preset.lattice)


@pytest.mark.parametrize(
    "key",
    [
        "nope",
        "hirzebruch:x",
        "hirzebruch:-1",
        "blowup_p2:6",
        "simplefibres:3,3",
        "simplefibres:1,0",
        "case1:0",
        "case3:1",
        "case3:0,multiple",
        "k3:1",
        "fibre_tree:g,2",
        "fibre_tree:{bad",
    ],
)
def test_out_of_range(key):
    with pytest.raises(PresetError) as e:
        load_preset(key)
    assert e.value.detail["error"] == "preset_out_of_range"


def test_case1_at_one_is_three_points():
    assert load_preset("case1:1").key == "blowup_p2:3"


def test_named_classes():
    preset = load_preset("blowup_p2:4")
    assert preset.label_of(preset.cls("L-E1")) == "L1"
    assert preset.cls("D1") == preset.cls("2L-E2-E3-E4")
    assert preset.label_of(preset.cls("3L")) is None


def test_simplefibres_d_alpha():
    preset = load_preset("simplefibres:3,2")
    assert d_alpha(preset, (1, 0)) == preset.cls("S+3F-E1")
    assert intersect(d_alpha(preset, (1, 1)), d_alpha(preset, (1, 0))) == 3 - 1


def test_k3_divisor():
    preset = load_preset("k3")
    d = preset.cls("D")
    assert intersect(d, d) == 18


def test_three_point_table():
    assert load_preset("blowup_p2:3").intersection_table() == [
        [1, 1, 1, 1, 2],
        [1, 0, 1, 1, 1],
        [1, 1, 0, 1, 1],
        [1, 1, 1, 0, 1],
        [2, 1, 1, 1, 1],
    ]


def test_fibre_tree_keys_reload():
    preset = load_preset("fibre_tree:h,3")
    assert preset.key.startswith("fibre_tree:{")
    assert load_preset(preset.key).lattice == preset.lattice
    assert preset.cls("F").coeffs == (0, 1, 2, 1)


@pytest.mark.parametrize(
    "key, family",
    [("case3:2,multiple", "case3"), ("k3", "k3"), ("fibre_tree:h,3", "fibre_tree")],
)
def test_preset_family(key, family):
    assert preset_family(key) == family
