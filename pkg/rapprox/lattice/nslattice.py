# rapprox/lattice/nslattice.py
"""
Neron-Severi intersection lattices and divisor classes.

A lattice is a labelled basis with a symmetric nondegenerate integer Gram
matrix. Classes are coefficient vectors in that basis; coefficients are
ints, or Fractions for dual classes. sympy does the exact matrix work.
"""
from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence, Union

import sympy
from sympy import Matrix

from rapprox.core.errors import (
    InvalidConfigurationError,
    LatticeMismatchError,
    SingularGramError,
)

logger = logging.getLogger("lattice")

Number = Union[int, Fraction]

_TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*\*?\s*([A-Za-z][A-Za-z0-9_']*)\s*")


def _exact(x) -> Number:
    """sympy/Fraction/int -> int when integral, else Fraction."""
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    r = sympy.Rational(x)
    p, q = int(r.p), int(r.q)
    return p if q == 1 else Fraction(p, q)


@dataclass(frozen=True)
class NSLattice:
    labels: tuple[str, ...]
    gram: tuple[tuple[int, ...], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        r = len(self.labels)
        if len(set(self.labels)) != r:
            raise InvalidConfigurationError("basis labels must be distinct", labels=list(self.labels))
        if len(self.gram) != r or any(len(row) != r for row in self.gram):
            raise InvalidConfigurationError("gram must be square and match the labels", rank=r)
        for i in range(r):
            for j in range(i):
                if self.gram[i][j] != self.gram[j][i]:
                    raise InvalidConfigurationError("gram is not symmetric", row=i, col=j)
        if self.det == 0:
            raise SingularGramError("intersection form is degenerate", labels=list(self.labels))

    @property
    def rank(self) -> int:
        return len(self.labels)

    @cached_property
    def matrix(self) -> Matrix:
        return Matrix(self.gram)

    @cached_property
    def det(self) -> int:
        return int(self.matrix.det())

    @cached_property
    def inverse(self) -> tuple[tuple[Number, ...], ...]:
        inv = self.matrix.inv()
        return tuple(tuple(_exact(inv[i, j]) for j in range(self.rank)) for i in range(self.rank))

    @cached_property
    def signature(self) -> tuple[int, int]:
        """
        (positive, negative) eigenvalue counts.

        The characteristic polynomial of a symmetric matrix is real-rooted, so
        Descartes' rule counts its positive and negative roots exactly.
        """
        x = sympy.Symbol("x")
        coeffs = [int(c) for c in self.matrix.charpoly(x).all_coeffs()]
        deg = len(coeffs) - 1
        flipped = [c * (-1) ** (deg - k) for k, c in enumerate(coeffs)]
        return _sign_changes(coeffs), _sign_changes(flipped)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InvalidConfigurationError(f"unknown basis label {label!r}", labels=list(self.labels))

    def basis(self, i: int) -> "DivisorClass":
        return DivisorClass(self, tuple(1 if k == i else 0 for k in range(self.rank)))

    def __getitem__(self, label: str) -> "DivisorClass":
        return self.basis(self.index(label))

    def cls(self, coeffs: Iterable) -> "DivisorClass":
        return DivisorClass(self, tuple(_exact(c) for c in coeffs))

    def zero(self) -> "DivisorClass":
        return DivisorClass(self, (0,) * self.rank)

    def pair(self, u: Sequence[Number], v: Sequence[Number]) -> Number:
        g = self.gram
        total = 0
        for i, ui in enumerate(u):
            if not ui:
                continue
            row = g[i]
            total += ui * sum(row[j] * vj for j, vj in enumerate(v) if vj)
        return _exact(total)

    def to_dict(self) -> dict:
        return {"labels": list(self.labels), "gram": [list(r) for r in self.gram]}


@dataclass(frozen=True)
class DivisorClass:
    lattice: NSLattice
    coeffs: tuple

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.lattice.rank:
            raise LatticeMismatchError(
                "coefficient vector does not match the lattice rank",
                rank=self.lattice.rank,
                length=len(self.coeffs),
            )

    @property
    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _same(self, other: "DivisorClass") -> None:
        if self.lattice is not other.lattice and self.lattice != other.lattice:
            raise LatticeMismatchError("classes live in different lattices")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._same(other)
        return self.lattice.cls(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self._same(other)
        return self.lattice.cls(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self) -> "DivisorClass":
        return self.lattice.cls(-a for a in self.coeffs)

    def __mul__(self, k: Number) -> "DivisorClass":
        return self.lattice.cls(k * a for a in self.coeffs)

    __rmul__ = __mul__

    def __matmul__(self, other: "DivisorClass") -> Number:
        return intersect(self, other)

    def primitive(self) -> "DivisorClass":
        """Positive multiple with coprime integer coefficients."""
        if self.is_zero:
            return self
        den = math.lcm(*(Fraction(c).denominator for c in self.coeffs))
        ints = [int(Fraction(c) * den) for c in self.coeffs]
        g = math.gcd(*ints)
        return self.lattice.cls(x // g for x in ints)

    def expression(self) -> str:
        parts = []
        for c, lab in zip(self.coeffs, self.lattice.labels):
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            coef = "" if mag == 1 else (f"({mag})" if isinstance(mag, Fraction) else str(mag))
            parts.append(f"{sign}{coef}{lab}")
        if not parts:
            return "0"
        out = "".join(parts)
        return out[1:] if out.startswith("+") else out

    def __str__(self) -> str:
        return self.expression()


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def _sign_changes(coeffs: Sequence[int]) -> int:
    signs = [c > 0 for c in coeffs if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def intersect(a: DivisorClass, b: DivisorClass) -> Number:
    a._same(b)
    return a.lattice.pair(a.coeffs, b.coeffs)


def dual_basis(lattice: NSLattice) -> list[DivisorClass]:
    """D_i with D_i . E_j = delta_ij; rows of the inverse Gram."""
    return [lattice.cls(row) for row in lattice.inverse]


def signature(lattice: NSLattice) -> tuple[int, int]:
    return lattice.signature


def has_hodge_signature(lattice: NSLattice) -> bool:
    return lattice.signature == (1, lattice.rank - 1)


def class_from_expression(
    lattice: NSLattice,
    text: str,
    named: Optional[Mapping[str, DivisorClass]] = None,
) -> DivisorClass:
    """
    Parse "2L-E1-E2", "S+3F", "L1+C2" into a class.

    Names resolve against ``named`` first, then the basis labels.
    """
    text = text.strip()
    if text == "0":
        return lattice.zero()
    pos = 0
    total = lattice.zero()
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or (m.group(1) is None and not first):
            raise InvalidConfigurationError(f"cannot parse class expression {text!r}", at=pos)
        sign, coef, name = m.groups()
        k = int(coef) if coef else 1
        if sign == "-":
            k = -k
        if named and name in named:
            term = named[name]
            term._same(total)
        else:
            term = lattice[name]
        total = total + k * term
        pos = m.end()
        first = False
    return total


@dataclass(frozen=True)
class Rebased:
    """A lattice re-expressed in a basis of named classes of another one."""

    source: NSLattice
    lattice: NSLattice
    change: tuple[tuple[int, ...], ...]

    def to_source(self, c: DivisorClass) -> DivisorClass:
        if c.lattice != self.lattice:
            raise LatticeMismatchError("class is not in the rebased lattice")
        out = [0] * self.source.rank
        for k, ck in enumerate(c.coeffs):
            for j, v in enumerate(self.change[k]):
                out[j] += ck * v
        return self.source.cls(out)

    def from_source(self, c: DivisorClass) -> DivisorClass:
        if c.lattice != self.source:
            raise LatticeMismatchError("class is not in the source lattice")
        m = Matrix(self.change).T
        sol = m.inv() * Matrix(list(c.coeffs))
        return self.lattice.cls(sol[i] for i in range(self.lattice.rank))


def rebase(lattice: NSLattice, labels: Sequence[str], classes: Sequence[DivisorClass]) -> Rebased:
    if len(classes) != lattice.rank or len(labels) != lattice.rank:
        raise InvalidConfigurationError("a new basis needs exactly rank many classes", rank=lattice.rank)
    for c in classes:
        if c.lattice != lattice or not c.is_integral:
            raise InvalidConfigurationError("basis classes must be integral classes of the lattice")
    change = tuple(tuple(c.coeffs) for c in classes)
    if abs(int(Matrix(change).det())) != 1:
        raise InvalidConfigurationError("new basis is not unimodular", labels=list(labels))
    gram = tuple(tuple(int(intersect(a, b)) for b in classes) for a in classes)
    new = NSLattice(tuple(labels), gram, name=f"{lattice.name}/rebased")
    logger.debug(f"rebased {lattice.name or 'lattice'} onto {list(labels)}")
    return Rebased(lattice, new, change)
