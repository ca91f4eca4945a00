"""Zonotopal power ideals and the Hilbert series of their quotients.

The quotient is graded, so its Hilbert function in degree ``d`` is the number
of degree-``d`` monomials minus the dimension of the ideal's degree-``d``
slice.  Slices are computed exactly by linear algebra over Q; no Groebner
bases are involved.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .errors import DegreeBoundViolated, GuardExceeded
from .linalg import EchelonBasis, QMatrix, rank, rank_of_vectors
from .matroid import TuttePoly, VectorConfig, tutte
from .zonotope import Zonotope, facet_data

MONOMIAL_GUARD = 20_000

Monomial = tuple[int, ...]


@dataclass(frozen=True)
class IdealPresentation:
    """Generators ``(eta . x)^e``, one per unoriented facet normal class.

    ``degree_bound`` is a degree past which the quotient must vanish; it is
    ``m`` for ``k <= 1`` and a complete-intersection bound otherwise.
    """

    n: int
    generators: tuple[tuple[tuple[int, ...], int], ...]
    degree_bound: int
    k: int = 0

    @property
    def unit_ideal(self) -> bool:
        return any(e <= 0 for _, e in self.generators)


@dataclass(frozen=True)
class GradedSeries:
    """Ascending integer coefficients of a polynomial in ``q``."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @classmethod
    def zero(cls) -> "GradedSeries":
        return cls(())

    def total(self) -> int:
        return sum(self.coeffs)

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other) -> bool:
        if isinstance(other, GradedSeries):
            return self.coeffs == other.coeffs
        if isinstance(other, (list, tuple)):
            return self.coeffs == GradedSeries(tuple(other)).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __le__(self, other: "GradedSeries") -> bool:
        """Coefficientwise comparison."""
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return all(x <= y for x, y in zip(a, b))

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, d: int) -> int:
        return self.coeffs[d] if 0 <= d < len(self.coeffs) else 0

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        out = []
        for d, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if d == 0 else ("q" if d == 1 else f"q^{d}")
            out.append(str(c) if not mono else (mono if c == 1 else f"{c}{mono}"))
        return " + ".join(out)


def ideal_generators(Z: Zonotope, k: int) -> IdealPresentation:
    C = Z.config
    gens = tuple((f.normal, f.multiplicity + k) for f in Z.unoriented())
    if k <= 1:
        bound = C.m
    else:
        # a basis of normals already cuts out a complete intersection
        chosen, exps = [], []
        for eta, e in sorted(gens, key=lambda g: g[1]):
            if rank_of_vectors(chosen + [eta]) > len(chosen):
                chosen.append(eta)
                exps.append(e)
        bound = sum(e - 1 for e in exps)
    return IdealPresentation(C.n, gens, bound, k)


def monomials(n: int, d: int) -> list[Monomial]:
    """Exponent vectors of degree ``d`` in ``n`` variables, lexicographically descending."""
    out = []
    for combo in itertools.combinations_with_replacement(range(n), d):
        e = [0] * n
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    return out


def linear_form_power(eta: Sequence[int], e: int) -> dict[Monomial, int]:
    """Expand ``(eta . x)^e`` by repeated multiplication."""
    n = len(eta)
    poly: dict[Monomial, int] = {(0,) * n: 1}
    for _ in range(e):
        nxt: Counter = Counter()
        for mono, c in poly.items():
            for i, a in enumerate(eta):
                if a:
                    m2 = list(mono)
                    m2[i] += 1
                    nxt[tuple(m2)] += c * a
        poly = {m: c for m, c in nxt.items() if c}
    return poly


def _shift(poly: dict[Monomial, int], alpha: Monomial) -> dict[Monomial, int]:
    return {tuple(a + b for a, b in zip(mono, alpha)): c for mono, c in poly.items()}


def _vector(poly: dict[Monomial, int], index: dict[Monomial, int]) -> list[int]:
    v = [0] * len(index)
    for mono, c in poly.items():
        v[index[mono]] = c
    return v


def _check_guard(n: int, d: int) -> None:
    size = comb(n + d - 1, d) if n else (1 if d == 0 else 0)
    if size > MONOMIAL_GUARD:
        raise GuardExceeded(f"monomials of degree {d}", size, MONOMIAL_GUARD)


def slice_dimensions(P: IdealPresentation):
    """Yield ``(d, number of monomials, dim I_d)`` for ``d = 0, 1, 2, ...``.

    ``I_d`` is spanned by ``x_i * I_{d-1}`` together with the generators of
    degree exactly ``d``, so only the previous slice basis is carried along.
    """
    n = P.n
    prev: list[dict[Monomial, int]] = []
    d = 0
    while True:
        _check_guard(n, d)
        monos = monomials(n, d)
        index = {mono: i for i, mono in enumerate(monos)}
        basis = EchelonBasis(len(monos))
        spanning: list[dict[Monomial, int]] = []
        for eta, e in P.generators:
            if e == d:
                spanning.append(linear_form_power(eta, e))
        for poly in prev:
            for i in range(n):
                unit = tuple(1 if j == i else 0 for j in range(n))
                spanning.append(_shift(poly, unit))
        for poly in spanning:
            if basis.full:
                break
            basis.insert(_vector(poly, index))
        yield d, len(monos), len(basis)
        prev = [{monos[j]: c for j, c in enumerate(row) if c} for row in basis.basis()]
        d += 1


def hilbert_series(P: IdealPresentation) -> GradedSeries:
    """Hilbert series of the quotient by ``P``.

    Stops at the first vanishing degree, then checks one more degree.  A
    nonzero value past ``degree_bound`` raises :class:`DegreeBoundViolated`.
    """
    if P.unit_ideal:
        return GradedSeries.zero()
    coeffs: list[int] = []
    vanished_at = None
    for d, total, dim_i in slice_dimensions(P):
        h = total - dim_i
        if vanished_at is not None:
            if h != 0:
                raise DegreeBoundViolated(f"h_{d} = {h} after h_{vanished_at} = 0")
            break
        if h == 0:
            vanished_at = d
            continue
        if d > P.degree_bound:
            raise DegreeBoundViolated(f"h_{d} = {h} past degree bound {P.degree_bound}")
        coeffs.append(h)
    return GradedSeries(tuple(coeffs))


def macaulay_hilbert_function(P: IdealPresentation, d: int) -> int:
    """``h_d`` from the full Macaulay matrix of all ``x^alpha (eta . x)^e``.

    Independent of :func:`slice_dimensions`; used to cross-check it.
    """
    if P.unit_ideal:
        return 0
    _check_guard(P.n, d)
    monos = monomials(P.n, d)
    index = {mono: i for i, mono in enumerate(monos)}
    rows = []
    for eta, e in P.generators:
        if e > d:
            continue
        power = linear_form_power(eta, e)
        for alpha in monomials(P.n, d - e):
            rows.append(_vector(_shift(power, alpha), index))
    r = rank(QMatrix.from_rows(rows, len(monos))) if rows else 0
    return len(monos) - r


def total_dimension(P: IdealPresentation) -> int:
    return hilbert_series(P).total()


def hilbert_of(C: VectorConfig, k: int) -> GradedSeries:
    return hilbert_series(ideal_generators(facet_data(C), k))


# ---------------------------------------------------------------------------
# Tutte specialisations


_TUTTE_X = {1: (1, 1), 0: (1,), -1: (0,)}  # x -> 1+q, 1, 0 as ascending coefficients


def tutte_specialization(T: TuttePoly, m: int, n: int, k: int) -> GradedSeries:
    """Expand ``q^(m-n) T(arg, 1/q)`` with ``arg`` = 1+q, 1, 0 for k = 1, 0, -1.

    Raises ``ValueError`` if the Laurent expansion has a negative power or a
    negative coefficient (it cannot then be a Hilbert series).
    """
    if k not in _TUTTE_X:
        raise ValueError("the Tutte specialisation is only defined for k in {-1, 0, 1}")
    base = _TUTTE_X[k]
    laurent: Counter = Counter()
    for (i, j), c in T.coeffs.items():
        # base^i as a polynomial in q
        poly = [1]
        for _ in range(i):
            nxt = [0] * (len(poly) + len(base) - 1)
            for a, pa in enumerate(poly):
                for b, pb in enumerate(base):
                    nxt[a + b] += pa * pb
            poly = nxt
        for a, pa in enumerate(poly):
            if pa:
                laurent[a + m - n - j] += c * pa
    laurent = Counter({e: c for e, c in laurent.items() if c})
    if not laurent:
        return GradedSeries.zero()
    if min(laurent) < 0:
        raise ValueError(f"Laurent expansion has negative power q^{min(laurent)}")
    top = max(laurent)
    coeffs = tuple(laurent.get(e, 0) for e in range(top + 1))
    if any(c < 0 for c in coeffs):
        raise ValueError("negative coefficient in Tutte specialisation")
    return GradedSeries(coeffs)


def verify_tutte_identity(C: VectorConfig, k: int, T: TuttePoly | None = None) -> bool:
    """Whether the Hilbert series for ``k`` matches its Tutte specialisation."""
    if T is None:
        T = tutte(C)
    try:
        rhs = tutte_specialization(T, C.m, C.n, k)
    except ValueError:
        return False
    return hilbert_of(C, k) == rhs
