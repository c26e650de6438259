# tests/test_cones.py
from __future__ import annotations

import pytest

from rapprox.core.config import settings
from rapprox.core.errors import DegenerateConeError, NotFullDimensionalError, PreconditionError, RankCapError
from rapprox.lattice.cones import (
    Cone,
    contains,
    degree_profile,
    double_description,
    dual_cone,
    extremal_rays,
    facets,
    farkas_certificate,
    inequalities,
    is_dual_pair,
    nakai_ample,
    sample_interior,
    subdivide_by_min_degree,
)
from rapprox.lattice.nslattice import intersect
from rapprox.lattice.presets import load_preset
from rapprox.predictor.fixtures import presets_used

FIXTURE_PRESETS = sorted(presets_used())


def test_double_description_orthant():
    assert double_description([(1, 0), (0, 1)], 2) == ([(0, 1), (1, 0)], [])


def test_double_description_half_plane():
    rays, lines = double_description([(1, 0)], 2)
    assert rays == [(1, 0)]
    assert lines == [(0, 1)]


def test_inequalities_reduce_against_equations():
    assert inequalities([(1, 0), (0, 1), (0, -1)], 2) == ([(1, 0)], [])
    assert inequalities([(1, 1)], 2) == ([(0, 1)], [(1, -1)])


def test_facets():
    preset = load_preset("hirzebruch:1")
    assert facets(preset.effective_cone) == [(0, 1), (1, 0)]
    assert facets(preset.nef_cone) == [(-1, 1), (1, 0)]
    line = Cone.from_vectors(preset.lattice, [(1, 1)])
    assert facets(line) == [(0, 1), (1, -1), (-1, 1)]


def test_four_point_effective_facets(four_points):
    eff = four_points.effective_cone
    normals = facets(eff)
    assert len(normals) == 10
    for h in normals:
        assert all(sum(x * y for x, y in zip(h, g)) >= 0 for g in eff.generators)

@pytest.mark.parametrize("n", [0, 1, 2, 5])
def test_hirzebruch_dual_pair(n):
    preset = load_preset(f"hirzebruch:{n}")
    assert dual_cone(preset.effective_cone).generators == preset.nef_cone.generators
    assert is_dual_pair(preset.effective_cone, preset.nef_cone)


def test_four_point_nef_cone(four_points):
    dual = dual_cone(four_points.effective_cone)
    assert len(dual) == 10
    assert dual.generators == four_points.nef_cone.generators


def test_redundant_generators_are_dropped(four_points):
    nef = four_points.nef_cone
    padded = Cone.from_classes(nef.lattice, nef.rays + [four_points.cls("L+L1")])
    assert extremal_rays(padded).generators == nef.generators


def test_membership_and_certificate(four_points):
    nef = four_points.nef_cone
    assert contains(nef, four_points.cls("L"))
    e1 = four_points.cls("E1")
    cert = farkas_certificate(nef, e1)
    assert cert is not None
    assert intersect(cert, e1) < 0
    assert all(intersect(cert, r) >= 0 for r in nef.rays)


def test_nakai(four_points):
    eff = four_points.effective_classes
    assert nakai_ample(four_points.ample_sample(), eff)
    assert not nakai_ample(four_points.cls("L"), eff)
    with pytest.raises(PreconditionError):
        nakai_ample(four_points.cls("L"), [])


def test_degenerate_cones(four_points):
    lat = four_points.lattice
    with pytest.raises(DegenerateConeError):
        Cone(lat, ((0, 0, 0, 0, 0),))
    with pytest.raises(DegenerateConeError):
        Cone(lat, ((0, 0, 0, 0, 2),))
    with pytest.raises(DegenerateConeError):
        dual_cone(Cone(lat, ()))
    with pytest.raises(NotFullDimensionalError):
        sample_interior(Cone.from_classes(lat, [four_points.cls("L")]))


def test_rank_cap(monkeypatch):
    preset = load_preset("blowup_p2:2")
    monkeypatch.setattr(settings, "rank_cap", 2)
    with pytest.raises(RankCapError) as e:
        dual_cone(preset.effective_cone)
    assert e.value.detail["rank"] == 3


def test_subdivision_by_min_degree():
    preset = load_preset("simplefibres:3,1")
    cells = subdivide_by_min_degree(preset.nef_cone, preset.classes(["S", "F1"]))
    assert [c.index for c in cells] == [0, 1]
    for cell in cells:
        assert cell.cone.is_full_dimensional
        other = preset.cls("F1" if cell.index == 0 else "S")
        for r in cell.cone.rays:
            assert intersect(cell.candidate, r) <= intersect(other, r)
    assert degree_profile(cells[0].cone, cells[0].candidate)


def test_subdivision_arguments(four_points):
    with pytest.raises(PreconditionError):
        subdivide_by_min_degree(four_points.nef_cone, [])
    with pytest.raises(PreconditionError):
        subdivide_by_min_degree(four_points.nef_cone, [four_points.cls("E1")], [0])


def test_subdivision_with_workers(two_workers):
    preset = load_preset("simplefibres:3,1")
    cells = subdivide_by_min_degree(preset.nef_cone, preset.classes(["S", "F1"]))
    assert len(cells) == 2


# ---------------------------------------------------------------------------
# Fixture cones
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("key", FIXTURE_PRESETS)
def test_double_dual_is_the_cone(key):
    preset = load_preset(key)
    for cone in (preset.effective_cone, preset.nef_cone):
        assert dual_cone(dual_cone(cone)).generators == extremal_rays(cone).generators


@pytest.mark.parametrize("key", FIXTURE_PRESETS)
def test_nef_interior_is_ample(key):
    preset = load_preset(key)
    assert nakai_ample(sample_interior(preset.nef_cone), preset.effective_classes)
