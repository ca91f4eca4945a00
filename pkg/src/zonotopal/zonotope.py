"""Facets, lattice points and volume of the zonotope generated by the columns."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .errors import GuardExceeded, NonIntegerColumns
from .linalg import QMatrix, canonical_vector, det, nullspace
from .matroid import VectorConfig

BOX_GUARD = 10 ** 6
VOLUME_GUARD = 20


def _dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


@dataclass(frozen=True)
class FacetDatum:
    """One oriented facet normal with its multiplicity and support value."""

    normal: tuple[int, ...]
    multiplicity: int
    support_value: Fraction


@dataclass(frozen=True)
class Zonotope:
    config: VectorConfig
    facets: tuple[FacetDatum, ...]

    def unoriented(self) -> list[FacetDatum]:
        """One facet per normal class, the canonical (first nonzero positive) orientation."""
        return [f for f in self.facets if f.normal == canonical_vector(f.normal)]

    def multiplicities(self) -> list[int]:
        return [f.multiplicity for f in self.unoriented()]

    def contains(self, p) -> bool:
        return all(_dot(f.normal, p) <= f.support_value for f in self.facets)

    def contains_interior(self, p) -> bool:
        return all(_dot(f.normal, p) < f.support_value for f in self.facets)


def _facet(C: VectorConfig, eta: tuple[int, ...]) -> FacetDatum:
    vals = [_dot(eta, y) for y in C.columns]
    return FacetDatum(eta, sum(1 for v in vals if v), sum((v for v in vals if v > 0), Fraction(0)))


def facet_normals(C: VectorConfig) -> list[tuple[int, ...]]:
    """Canonical normals of the hyperplanes spanned by the columns, sorted."""
    n = C.n
    if n == 0:
        return []
    if n == 1:
        return [(1,)]
    nonzero = [y for y in C.columns if any(y)]
    seen = set()
    for S in itertools.combinations(range(len(nonzero)), n - 1):
        sub = QMatrix.from_rows([nonzero[i] for i in S], n)
        ker = nullspace(sub)
        if len(ker) == 1:
            seen.add(canonical_vector(ker[0]))
    return sorted(seen)


def facet_data(C: VectorConfig) -> Zonotope:
    """All oriented facets: each spanned hyperplane contributes ``eta`` and ``-eta``."""
    facets = []
    for eta in facet_normals(C):
        facets.append(_facet(C, eta))
        facets.append(_facet(C, tuple(-x for x in eta)))
    return Zonotope(C, tuple(facets))


def _bounding_box(Z: Zonotope) -> list[range]:
    C = Z.config
    if not C.matrix.is_integral():
        raise NonIntegerColumns("lattice enumeration needs integer columns")
    box = []
    for j in range(C.n):
        lo = sum(min(0, int(y[j])) for y in C.columns)
        hi = sum(max(0, int(y[j])) for y in C.columns)
        box.append(range(lo, hi + 1))
    size = prod(len(r) for r in box)
    if size > BOX_GUARD:
        raise GuardExceeded("bounding-box points", size, BOX_GUARD)
    return box


def lattice_points(Z: Zonotope) -> tuple[int, list[tuple[int, ...]]]:
    pts = [p for p in itertools.product(*_bounding_box(Z)) if Z.contains(p)]
    return len(pts), pts


def interior_lattice_points(Z: Zonotope) -> int:
    return sum(1 for p in itertools.product(*_bounding_box(Z)) if Z.contains_interior(p))


def volume(C: VectorConfig, guard: int = VOLUME_GUARD) -> Fraction:
    """Sum of ``|det|`` over all ``n``-subsets of columns (parallelepiped tiling)."""
    if C.m > guard:
        raise GuardExceeded("columns", C.m, guard)
    return sum((abs(det(C.matrix.submatrix(cols=B)))
                for B in itertools.combinations(range(C.m), C.n)), Fraction(0))
