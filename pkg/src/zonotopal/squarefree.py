"""The square-free algebra on phi_1..phi_m and the row-generated subalgebra.

Elements are stored sparsely as ``{mask: coefficient}``, where bit ``k`` of
``mask`` marks phi_k in the monomial.  Because phi_k^2 = 0, a product of two
monomials survives only when their masks are disjoint.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Mapping, Sequence

from .errors import GuardExceeded, NotNilpotent, RankDeficient, SizeMismatch, ZeroColumn
from .linalg import EchelonBasis, QMatrix, rank
from .power_ideal import GradedSeries

SUBALGEBRA_GUARD = 16


def _exact(c):
    # integral values are kept as int: powering with ints avoids Fraction overhead
    if type(c) is int:
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


class SquareFreeElem:
    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms: Mapping[int, Fraction] | None = None):
        self.m = m
        self.terms = {mask: _exact(c) for mask, c in (terms or {}).items() if c}

    @classmethod
    def phi(cls, m: int, *indices: int) -> "SquareFreeElem":
        """The monomial ``phi_{i1} ... phi_{ik}`` (0-based indices)."""
        mask = 0
        for i in indices:
            if mask >> i & 1:
                return cls(m)
            mask |= 1 << i
        return cls(m, {mask: 1})

    @classmethod
    def one(cls, m: int) -> "SquareFreeElem":
        return cls(m, {0: 1})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "SquareFreeElem":
        return cls(len(coeffs), {1 << k: c for k, c in enumerate(coeffs)})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, SquareFreeElem) and self.m == other.m and self.terms == other.terms

    def __add__(self, other: "SquareFreeElem") -> "SquareFreeElem":
        if self.m != other.m:
            raise SizeMismatch("elements of different algebras")
        out = dict(self.terms)
        for mask, c in other.terms.items():
            out[mask] = out.get(mask, 0) + c
        return SquareFreeElem(self.m, out)

    def __rmul__(self, c) -> "SquareFreeElem":
        c = _exact(c)
        return SquareFreeElem(self.m, {mask: c * v for mask, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, SquareFreeElem):
            return multiply(self, other)
        return self.__rmul__(other)

    def __pow__(self, e: int) -> "SquareFreeElem":
        out = SquareFreeElem.one(self.m)
        for _ in range(e):
            out = multiply(out, self)
        return out

    def grade(self) -> set[int]:
        return {mask.bit_count() for mask in self.terms}

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mask in sorted(self.terms, key=lambda s: (s.bit_count(), s)):
            idx = [str(k + 1) for k in range(self.m) if mask >> k & 1]
            mono = f"phi_{{{','.join(idx)}}}" if idx else "1"
            parts.append(f"{self.terms[mask]}*{mono}")
        return " + ".join(parts)


def multiply(a: SquareFreeElem, b: SquareFreeElem) -> SquareFreeElem:
    if a.m != b.m:
        raise SizeMismatch(f"product of elements of Phi_{a.m} and Phi_{b.m}")
    out: dict[int, Fraction] = {}
    for s, c in a.terms.items():
        for t, d in b.terms.items():
            if s & t:
                continue
            u = s | t
            out[u] = out.get(u, 0) + c * d
    return SquareFreeElem(a.m, out)


def generator_images(A: QMatrix) -> list[SquareFreeElem]:
    """``X_i = sum_k A[i, k] phi_k`` for every row ``i``."""
    r = rank(A)
    if r < A.rows:
        raise RankDeficient(r, A.rows)
    return [SquareFreeElem.linear(A.row(i)) for i in range(A.rows)]


def length(a: SquareFreeElem) -> int:
    """Largest ``l`` with ``a^l != 0``, by repeated multiplication."""
    if a.terms.get(0):
        raise NotNilpotent("element has a nonzero constant term")
    if not a:
        return 0
    power = a
    ell = 1
    while True:
        power = multiply(power, a)
        if not power:
            return ell
        ell += 1


def linear_length(A: QMatrix, b: Sequence) -> int:
    """Closed form: the number of nonzero entries of ``b^T A``."""
    if len(b) != A.rows:
        raise SizeMismatch(f"coefficient vector of length {len(b)} for {A.rows} rows")
    b = [Fraction(x) for x in b]
    return sum(1 for k in range(A.cols)
               if sum((b[i] * A[i, k] for i in range(A.rows)), Fraction(0)) != 0)


def subalgebra_hilbert(A: QMatrix, guard: int = SUBALGEBRA_GUARD) -> GradedSeries:
    """Hilbert series of the subalgebra generated by the row images ``X_i``.

    Degree ``d`` is spanned by the products ``X_{i1} ... X_{id}``, which are
    computed as ``X_i`` times the degree ``d-1`` products with index ``>= i``.
    """
    if A.cols > guard:
        raise GuardExceeded("columns", A.cols, guard)
    X = generator_images(A)
    n, m = A.rows, A.cols
    coeffs = [1]
    # products keyed by their largest generator index
    layer: list[tuple[int, SquareFreeElem]] = [(0, SquareFreeElem.one(m))]
    for d in range(1, m + 2):
        subsets = [sum(1 << k for k in S) for S in itertools.combinations(range(m), d)]
        index = {mask: j for j, mask in enumerate(subsets)}
        basis = EchelonBasis(len(subsets))
        nxt = []
        for lo, prod in layer:
            for i in range(lo, n):
                p = multiply(X[i], prod)
                nxt.append((i, p))
                if p and not basis.full:
                    v = [Fraction(0)] * len(subsets)
                    for mask, c in p.terms.items():
                        v[index[mask]] = c
                    basis.insert(v)
        h = len(basis)
        if h == 0:
            break
        coeffs.append(h)
        layer = [(i, p) for i, p in nxt if p]
    return GradedSeries(tuple(coeffs))


@dataclass(frozen=True)
class LengthOracle:
    """Query access to lengths of linear combinations of the row images.

    Two queries are offered: :meth:`length` of ``sum b_i X_i`` (computed by
    powering inside Phi_m) and :meth:`critical_ratios` for a generator pair.
    The backing matrix is private to the oracle.
    """

    n: int
    _matrix: QMatrix = field(repr=False)
    _images: tuple[SquareFreeElem, ...] = field(repr=False)

    def length(self, b: Sequence) -> int:
        if len(b) != self.n:
            raise SizeMismatch(f"coefficient vector of length {len(b)} for {self.n} generators")
        elem = SquareFreeElem(self._matrix.cols)
        for coef, X in zip(b, self._images):
            if coef:
                elem = elem + Fraction(coef) * X
        # rescaling does not change the length
        den = reduce(lcm, (Fraction(c).denominator for c in elem.terms.values()), 1)
        return length(den * elem)

    def critical_ratios(self, i: int, j: int) -> frozenset[Fraction]:
        """Values ``s`` at which ``length(x_i - s x_j)`` drops below its generic value."""
        A = self._matrix
        return frozenset(A[i, k] / A[j, k] for k in range(A.cols) if A[i, k] and A[j, k])


def make_length_oracle(A: QMatrix) -> LengthOracle:
    for k in range(A.cols):
        if not any(A.column(k)):
            raise ZeroColumn(f"column {k} is zero")
    X = generator_images(A)
    return LengthOracle(A.rows, A, tuple(X))
