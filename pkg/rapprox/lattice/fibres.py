# rapprox/lattice/fibres.py
"""
Reducible fibres of a ruled surface as rooted trees.

The surface is H_n blown up at points of one fibre. Its lattice has basis
(S, E_1, ..., E_m): S the negative section, E_i the fibre components, E_1
the root meeting S. Trees grow by blowups and shrink by contracting
(-1)-components; both directions are tracked so the dual basis can be
compared across a blowdown.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

from sympy import Matrix

from rapprox.core.errors import InvalidConfigurationError, PreconditionError
from rapprox.lattice.cones import Cone, is_dual_pair
from rapprox.lattice.nslattice import DivisorClass, NSLattice, dual_basis, intersect

logger = logging.getLogger("lattice")


@dataclass(frozen=True)
class FiberNode:
    label: str
    self_intersection: int
    parent: Optional[int] = None


@dataclass(frozen=True)
class FiberTree:
    nodes: tuple[FiberNode, ...]
    section_self_intersection: int = -1

    def __post_init__(self) -> None:
        if not self.nodes:
            raise InvalidConfigurationError("a fibre has at least one component")
        if self.nodes[0].parent is not None:
            raise InvalidConfigurationError("component 0 must be the root meeting the section")
        m = len(self.nodes)
        for i, node in enumerate(self.nodes[1:], start=1):
            if node.parent is None or not 0 <= node.parent < m or node.parent == i:
                raise InvalidConfigurationError("bad parent index", node=i, parent=node.parent)
        for i in range(m):
            seen, k = set(), i
            while k is not None:
                if k in seen:
                    raise InvalidConfigurationError("parent links form a cycle", node=i)
                seen.add(k)
                k = self.nodes[k].parent
        if m == 1:
            if self.nodes[0].self_intersection != 0:
                raise InvalidConfigurationError("an irreducible fibre has self-intersection 0")
        elif any(node.self_intersection > -1 for node in self.nodes):
            raise InvalidConfigurationError("components of a reducible fibre have self-intersection <= -1")

    @property
    def size(self) -> int:
        return len(self.nodes)

    @property
    def n(self) -> int:
        return -self.section_self_intersection

    def children(self, i: int) -> list[int]:
        return [k for k, node in enumerate(self.nodes) if node.parent == i]

    def neighbours(self, i: int) -> list[int]:
        up = [self.nodes[i].parent] if self.nodes[i].parent is not None else []
        return up + self.children(i)

    def adjacent(self, i: int, j: int) -> bool:
        return self.nodes[i].parent == j or self.nodes[j].parent == i

    def descends(self, i: int, j: int) -> bool:
        """E_i >= E_j: i lies in the subtree rooted at j."""
        k: Optional[int] = i
        while k is not None:
            if k == j:
                return True
            k = self.nodes[k].parent
        return False

    def subtree(self, i: int) -> list[int]:
        return [k for k in range(self.size) if self.descends(k, i)]

    def leaves(self) -> list[int]:
        return [i for i in range(self.size) if not self.children(i)]

    @cached_property
    def fiber_gram(self) -> tuple[tuple[int, ...], ...]:
        m = self.size
        rows = [[0] * m for _ in range(m)]
        for i, node in enumerate(self.nodes):
            rows[i][i] = node.self_intersection
            if node.parent is not None:
                rows[i][node.parent] = rows[node.parent][i] = 1
        return tuple(tuple(r) for r in rows)

    @cached_property
    def multiplicities(self) -> tuple[int, ...]:
        kernel = Matrix(self.fiber_gram).nullspace()
        if len(kernel) != 1:
            raise InvalidConfigurationError("fibre form does not have a one-dimensional kernel", kernel=len(kernel))
        v = kernel[0]
        if v[0] == 0:
            raise InvalidConfigurationError("root has multiplicity zero")
        v = v / v[0]
        if any(not x.is_integer or x <= 0 for x in v):
            raise InvalidConfigurationError("no positive integer multiplicities", vector=[str(x) for x in v])
        return tuple(int(x) for x in v)

    def to_dict(self) -> dict:
        return {
            "section_self_intersection": self.section_self_intersection,
            "nodes": [
                {"label": nd.label, "self_intersection": nd.self_intersection, "parent": nd.parent}
                for nd in self.nodes
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FiberTree":
        nodes = tuple(
            FiberNode(str(nd["label"]), int(nd["self_intersection"]), nd.get("parent")) for nd in data["nodes"]
        )
        return cls(nodes, int(data.get("section_self_intersection", -1)))


# ---------------------------------------------------------------------------
# Lattice and classes
# ---------------------------------------------------------------------------

def fiber_tree_lattice(tree: FiberTree) -> NSLattice:
    m = tree.size
    labels = ("S",) + tuple(nd.label for nd in tree.nodes)
    gram = [[0] * (m + 1) for _ in range(m + 1)]
    gram[0][0] = tree.section_self_intersection
    gram[0][1] = gram[1][0] = 1
    for i in range(m):
        for j in range(m):
            gram[i + 1][j + 1] = tree.fiber_gram[i][j]
    return NSLattice(labels, tuple(tuple(r) for r in gram), name=f"fibre_tree(n={tree.n}, m={m})")


def compute_fiber_class(tree: FiberTree, lattice: Optional[NSLattice] = None) -> DivisorClass:
    lat = lattice or fiber_tree_lattice(tree)
    f = lat.cls((0,) + tree.multiplicities)
    if intersect(f, f) != 0 or intersect(f, lat.basis(0)) != 1:
        raise InvalidConfigurationError("fibre class fails F.F = 0 or F.S = 1")
    return f


def verify_multiplegens(tree: FiberTree, i: int, j: int) -> tuple[bool, DivisorClass]:
    """
    Witness m_i D_j - m_j D_i for E_i >= E_j (component indices from 0).

    Adjacent pairs must give exactly sum_{t >= i} m_t E_t; other comparable
    pairs must give a nonnegative combination of fibre components.
    """
    if not (0 <= i < tree.size and 0 <= j < tree.size):
        raise PreconditionError("component index out of range", i=i, j=j)
    if not tree.descends(i, j):
        raise PreconditionError("E_i does not lie above E_j", i=i, j=j)
    lat = fiber_tree_lattice(tree)
    d = dual_basis(lat)
    m = tree.multiplicities
    witness = m[i] * d[j + 1] - m[j] * d[i + 1]
    if i == j:
        return witness.is_zero, witness
    if tree.adjacent(i, j):
        coeffs = [0] * lat.rank
        for t in tree.subtree(i):
            coeffs[t + 1] = m[t]
        return witness == lat.cls(coeffs), witness
    ok = witness.coeffs[0] == 0 and all(c >= 0 for c in witness.coeffs[1:])
    return ok, witness


# ---------------------------------------------------------------------------
# Blowups and blowdowns
# ---------------------------------------------------------------------------

def irreducible_fiber(n: int) -> FiberTree:
    return FiberTree((FiberNode("E1", 0),), -n)


def blow_up_on(tree: FiberTree, i: int) -> FiberTree:
    """Blow up a general point of E_i; the new component is a (-1) leaf."""
    nodes = list(tree.nodes)
    nd = nodes[i]
    nodes[i] = FiberNode(nd.label, nd.self_intersection - 1, nd.parent)
    nodes.append(FiberNode(f"E{len(nodes) + 1}", -1, i))
    return FiberTree(tuple(nodes), tree.section_self_intersection)


def blow_up_between(tree: FiberTree, i: int) -> FiberTree:
    """Blow up the point where E_i meets its parent."""
    nodes = list(tree.nodes)
    j = nodes[i].parent
    if j is None:
        raise PreconditionError("the root has no parent edge", node=i)
    k = len(nodes)
    nodes[i] = FiberNode(nodes[i].label, nodes[i].self_intersection - 1, k)
    nodes[j] = FiberNode(nodes[j].label, nodes[j].self_intersection - 1, nodes[j].parent)
    nodes.append(FiberNode(f"E{k + 1}", -1, j))
    return FiberTree(tuple(nodes), tree.section_self_intersection)


def random_fiber_tree(rng: random.Random, m: int, n: Optional[int] = None) -> FiberTree:
    """m components grown from an irreducible fibre by random blowups; n defaults to m + 1."""
    if m < 1:
        raise InvalidConfigurationError("m must be >= 1", m=m)
    tree = irreducible_fiber(m + 1 if n is None else n)
    while tree.size < m:
        k = rng.randrange(tree.size)
        if k > 0 and rng.random() < 0.5:
            tree = blow_up_between(tree, k)
        else:
            tree = blow_up_on(tree, k)
    return tree


@dataclass(frozen=True)
class Blowdown:
    source: FiberTree
    target: FiberTree
    contracted: int
    index_map: tuple[Optional[int], ...]


def blow_down(tree: FiberTree, t: int) -> Blowdown:
    if t == 0 or not 0 <= t < tree.size:
        raise PreconditionError("only non-root components can be contracted", node=t)
    if tree.nodes[t].self_intersection != -1:
        raise PreconditionError("only (-1)-components can be contracted", node=t)
    nbrs = tree.neighbours(t)
    if len(nbrs) > 2:
        raise PreconditionError("component has more than two neighbours", node=t)
    parent = tree.nodes[t].parent
    index_map = tuple(None if k == t else (k if k < t else k - 1) for k in range(tree.size))
    nodes = []
    for k, nd in enumerate(tree.nodes):
        if k == t:
            continue
        p = nd.parent
        if p == t:
            p = parent
        si = nd.self_intersection + (1 if k in nbrs else 0)
        nodes.append(FiberNode(nd.label, si, None if p is None else index_map[p]))
    return Blowdown(tree, FiberTree(tuple(nodes), tree.section_self_intersection), t, index_map)


def pullback(bd: Blowdown, cls: DivisorClass, lattice: NSLattice) -> DivisorClass:
    """f^* of a class on the contracted surface, in the source lattice."""
    t = bd.contracted
    small = cls.coeffs
    gram = lattice.gram
    out = [0] * lattice.rank
    for k, image in enumerate(bd.index_map):
        if image is not None:
            out[k + 1] = small[image + 1]
    out[0] = small[0]
    out[t + 1] = sum(out[a] * gram[a][t + 1] for a in range(lattice.rank) if a != t + 1)
    return lattice.cls(out)


def blowdown_gram(lattice: NSLattice, t: int) -> tuple[tuple[int, ...], ...]:
    """Gram after contracting the (-1)-class at basis index t."""
    g = lattice.gram
    keep = [a for a in range(lattice.rank) if a != t]
    return tuple(tuple(g[a][b] + g[a][t] * g[b][t] for b in keep) for a in keep)


def verify_inductive_step(tree: FiberTree, t: int) -> bool:
    bd = blow_down(tree, t)
    big = fiber_tree_lattice(tree)
    small = fiber_tree_lattice(bd.target)
    if blowdown_gram(big, t + 1) != small.gram:
        logger.warning(f"blowdown gram mismatch contracting E{t + 1}")
        return False
    d_big = dual_basis(big)
    d_small = dual_basis(small)
    for k, image in enumerate(bd.index_map):
        if image is not None and d_big[k + 1] != pullback(bd, d_small[image + 1], big):
            return False
    if d_big[0] != pullback(bd, d_small[0], big):
        return False
    nbrs = [bd.index_map[k] for k in tree.neighbours(t)]
    expected = -big.basis(t + 1)
    for k in nbrs:
        expected = expected + pullback(bd, d_small[k + 1], big)
    return d_big[t + 1] == expected


def verify_effect_cone(tree: FiberTree) -> dict:
    """
    S, E_1..E_m against the dual basis D_0..D_m.

    D_0 = F and D_1 = S + nF are checked when m < n.
    """
    lat = fiber_tree_lattice(tree)
    d = dual_basis(lat)
    eff = Cone.from_classes(lat, [lat.basis(k) for k in range(lat.rank)])
    nef = Cone.from_classes(lat, d)
    f = compute_fiber_class(tree, lat)
    report = {
        "integral": all(x.is_integral for x in d),
        "dual_pair": is_dual_pair(eff, nef),
        "d0_is_fibre": None,
        "d1_is_section": None,
    }
    if tree.size < tree.n:
        report["d0_is_fibre"] = d[0] == f
        report["d1_is_section"] = d[1] == lat.basis(0) + tree.n * f
    return report
