# tests/test_fibres.py
from __future__ import annotations

import random

import pytest

from rapprox.core.errors import InvalidConfigurationError, PreconditionError
from rapprox.lattice.fibres import (
    FiberNode,
    FiberTree,
    blow_down,
    blow_up_between,
    blow_up_on,
    compute_fiber_class,
    fiber_tree_lattice,
    irreducible_fiber,
    random_fiber_tree,
    verify_effect_cone,
    verify_inductive_step,
    verify_multiplegens,
)
from rapprox.lattice.nslattice import intersect
from rapprox.lattice.presets import f_tree, h_tree


def test_multiplicities():
    assert h_tree(3).multiplicities == (1, 2, 1)
    assert f_tree(3).multiplicities == (1, 1, 1)
    assert irreducible_fiber(2).multiplicities == (1,)


def test_fiber_class():
    tree = h_tree(3)
    lat = fiber_tree_lattice(tree)
    assert lat.labels == ("S", "E1", "E2", "E3")
    f = compute_fiber_class(tree, lat)
    assert f.coeffs == (0, 1, 2, 1)
    assert intersect(f, f) == 0
    assert intersect(f, lat["S"]) == 1


def test_blowups():
    once = blow_up_on(irreducible_fiber(3), 0)
    assert [nd.self_intersection for nd in once.nodes] == [-1, -1]
    assert once.multiplicities == (1, 1)
    twice = blow_up_between(once, 1)
    assert [nd.self_intersection for nd in twice.nodes] == [-2, -2, -1]
    assert twice.multiplicities == (1, 1, 2)
    with pytest.raises(PreconditionError):
        blow_up_between(once, 0)


def test_adjacent_multiple_gens():
    ok, witness = verify_multiplegens(h_tree(4), 1, 0)
    assert ok
    assert witness.coeffs == (0, 0, 2, 1)


def test_comparable_multiple_gens():
    ok, witness = verify_multiplegens(h_tree(4), 2, 0)
    assert ok
    assert witness.coeffs[0] == 0


def test_multiple_gens_needs_descent():
    with pytest.raises(PreconditionError):
        verify_multiplegens(h_tree(4), 0, 1)
    with pytest.raises(PreconditionError):
        verify_multiplegens(h_tree(4), 5, 0)


def test_inductive_step():
    tree = blow_up_between(blow_up_on(irreducible_fiber(4), 0), 1)
    assert verify_inductive_step(tree, 2)
    assert verify_inductive_step(blow_up_on(irreducible_fiber(3), 0), 1)


def test_blow_down_preconditions():
    tree = h_tree(3)
    with pytest.raises(PreconditionError):
        blow_down(tree, 0)
    with pytest.raises(PreconditionError):
        blow_down(tree, 2)
    target = blow_down(tree, 1).target
    assert target.size == 2


@pytest.mark.parametrize("tree", [h_tree(4), f_tree(4)], ids=["h", "f"])
def test_effect_cone(tree):
    report = verify_effect_cone(tree)
    assert report == {"integral": True, "dual_pair": True, "d0_is_fibre": True, "d1_is_section": True}


def test_effect_cone_skips_section_checks_for_large_fibres():
    report = verify_effect_cone(h_tree(3))
    assert report["dual_pair"]
    assert report["d0_is_fibre"] is None


@pytest.mark.parametrize("m", [1, 3, 6])
def test_random_trees(m):
    tree = random_fiber_tree(random.Random(m), m)
    assert tree.size == m
    assert tree.n == m + 1
    assert all(x > 0 for x in tree.multiplicities)


@pytest.mark.parametrize(
    "nodes",
    [
        (FiberNode("E1", -1),),
        (FiberNode("E1", -1, 0),),
        (FiberNode("E1", -2), FiberNode("E2", 0, 0)),
        (FiberNode("E1", -2), FiberNode("E2", -1, 2), FiberNode("E3", -1, 1)),
    ],
)
def test_invalid_trees(nodes):
    with pytest.raises(InvalidConfigurationError):
        FiberTree(nodes)


def test_tree_dict_form():
    tree = h_tree(2)
    assert FiberTree.from_dict(tree.to_dict()) == tree
