"""Vector configurations and their column matroids.

A :class:`VectorConfig` is a full-row-rank matrix read as the ordered list of
its columns.  Column indices are 0-based throughout.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import comb
from typing import Iterator, Mapping, Sequence

from .errors import GuardExceeded, IndexOutOfRange, RankDeficient
from .linalg import QMatrix, canonical_vector, det, int_det, rank, rank_of_vectors

TUTTE_GUARD = 20
TU_GUARD = 12
ISO_GUARD = 12


@dataclass(frozen=True, eq=False)
class VectorConfig:
    matrix: QMatrix

    @property
    def n(self) -> int:
        return self.matrix.rows

    @property
    def m(self) -> int:
        return self.matrix.cols

    @cached_property
    def columns(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(self.matrix.columns())

    def __eq__(self, other) -> bool:
        return isinstance(other, VectorConfig) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    @cached_property
    def rank_table(self) -> tuple[int, ...]:
        """``rank_table[mask]`` is the rank of the columns selected by ``mask``."""
        if self.m > 16:
            raise GuardExceeded("columns for rank table", self.m, 16)
        table = [0] * (1 << self.m)
        for mask, _, r in subset_ranks(self.columns):
            table[mask] = r
        return tuple(table)


def load_config(M: QMatrix) -> VectorConfig:
    r = rank(M)
    if r < M.rows:
        raise RankDeficient(r, M.rows)
    return VectorConfig(M)


def subset_rank(C: VectorConfig, S) -> int:
    S = list(S)
    for i in S:
        if not 0 <= i < C.m:
            raise IndexOutOfRange(f"column {i} not in [0, {C.m})")
    return rank_of_vectors([C.columns[i] for i in S])


def _reduce(v: list, basis: list) -> list:
    for p, b in basis:
        f = v[p]
        if f:
            v = [x - f * y for x, y in zip(v, b)]
    return v


def subset_ranks(columns: Sequence[Sequence]) -> Iterator[tuple[int, int, int]]:
    """Yield ``(mask, size, rank)`` for every subset of ``columns``.

    Depth-first over include/exclude decisions, carrying an incremental
    echelon basis so each subset costs one vector reduction.
    """
    cols = [[Fraction(x) for x in c] for c in columns]
    m = len(cols)

    def walk(i, mask, size, basis):
        if i == m:
            yield mask, size, len(basis)
            return
        yield from walk(i + 1, mask, size, basis)
        v = _reduce(cols[i], basis)
        piv = next((k for k, x in enumerate(v) if x), None)
        if piv is None:
            yield from walk(i + 1, mask | (1 << i), size + 1, basis)
        else:
            p = v[piv]
            nb = basis + [(piv, [x / p for x in v])]
            yield from walk(i + 1, mask | (1 << i), size + 1, nb)

    yield from walk(0, 0, 0, [])


# ---------------------------------------------------------------------------
# Tutte polynomial


class TuttePoly:
    """Bivariate integer polynomial ``sum c[i, j] x^i y^j``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[tuple[int, int], int] | None = None):
        self.coeffs = {k: int(v) for k, v in (coeffs or {}).items() if v}

    def __eq__(self, other) -> bool:
        return isinstance(other, TuttePoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other: "TuttePoly") -> "TuttePoly":
        out = Counter(self.coeffs)
        out.update(other.coeffs)
        return TuttePoly(out)

    def shift(self, dx: int = 0, dy: int = 0) -> "TuttePoly":
        return TuttePoly({(i + dx, j + dy): c for (i, j), c in self.coeffs.items()})

    def __call__(self, x, y) -> Fraction:
        return tutte_eval(self, x, y)

    def terms(self) -> list[tuple[int, int, int]]:
        """``(i, j, coeff)`` sorted by total degree, then x-degree descending."""
        return sorted(((i, j, c) for (i, j), c in self.coeffs.items()),
                      key=lambda t: (t[0] + t[1], -t[0]))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"

        def mono(i, j, c):
            parts = []
            if i:
                parts.append("x" if i == 1 else f"x^{i}")
            if j:
                parts.append("y" if j == 1 else f"y^{j}")
            body = "".join(parts)
            if not body:
                return str(c)
            return body if c == 1 else f"{c}*{body}"

        return " + ".join(mono(*t) for t in self.terms())

    def __repr__(self) -> str:
        return f"TuttePoly({self})"

    def to_json(self) -> list[list[int]]:
        return [[i, j, c] for i, j, c in self.terms()]

    def coefficient_grid(self) -> list[list[int]]:
        """Dense ascending array: ``grid[i][j]`` is the coefficient of ``x^i y^j``."""
        if not self.coeffs:
            return []
        dx = max(i for i, _ in self.coeffs) + 1
        dy = max(j for _, j in self.coeffs) + 1
        return [[self.coeffs.get((i, j), 0) for j in range(dy)] for i in range(dx)]


def tutte_eval(T: TuttePoly, x, y) -> Fraction:
    x, y = Fraction(x), Fraction(y)
    return sum((c * x ** i * y ** j for (i, j), c in T.coeffs.items()), Fraction(0))


def _expand_shifted(a: int, b: int, count: int, out: Counter) -> None:
    # count * (x-1)^a (y-1)^b
    for i in range(a + 1):
        ci = comb(a, i) * (-1) ** (a - i)
        for j in range(b + 1):
            out[(i, j)] += count * ci * comb(b, j) * (-1) ** (b - j)


def tutte_subset_sum(C: VectorConfig, guard: int = TUTTE_GUARD) -> TuttePoly:
    """Corank-nullity sum over all ``2^m`` column subsets."""
    if C.m > guard:
        raise GuardExceeded("columns", C.m, guard)
    full = rank(C.matrix) if C.m else 0
    tally: Counter = Counter()
    for _, size, r in subset_ranks(C.columns):
        tally[(full - r, size - r)] += 1
    out: Counter = Counter()
    for (a, b), count in tally.items():
        _expand_shifted(a, b, count, out)
    return TuttePoly(out)


def _contract(vecs: tuple, e: tuple) -> tuple:
    p = next(k for k, x in enumerate(e) if x)
    out = []
    for v in vecs:
        f = Fraction(v[p], e[p])
        w = [Fraction(a) - f * b for a, b in zip(v, e)]
        del w[p]
        out.append(canonical_vector(w))
    return tuple(sorted(out))


@lru_cache(maxsize=200_000)
def _dc(vecs: tuple) -> TuttePoly:
    if not vecs:
        return TuttePoly({(0, 0): 1})
    e, rest = vecs[-1], vecs[:-1]
    if not any(e):
        return _dc(rest).shift(dy=1)
    r_all = rank_of_vectors(vecs)
    r_rest = rank_of_vectors(rest) if rest else 0
    contracted = _dc(_contract(rest, e))
    if r_rest < r_all:
        return contracted.shift(dx=1)
    return _dc(rest) + contracted


def tutte_deletion_contraction(C: VectorConfig, guard: int = TUTTE_GUARD) -> TuttePoly:
    """Memoized deletion-contraction keyed on sorted canonical column multisets."""
    if C.m > guard:
        raise GuardExceeded("columns", C.m, guard)
    return _dc(tuple(sorted(canonical_vector(c) for c in C.columns)))


def tutte(C: VectorConfig, guard: int = TUTTE_GUARD, method: str = "subsets") -> TuttePoly:
    if method == "subsets":
        return tutte_subset_sum(C, guard)
    if method == "deletion-contraction":
        return tutte_deletion_contraction(C, guard)
    raise ValueError(f"unknown Tutte method {method!r}")


# ---------------------------------------------------------------------------
# unimodularity, bridges, central reduction


def is_totally_unimodular(M: QMatrix, guard: int = TU_GUARD) -> bool:
    """Brute force: every square minor lies in {-1, 0, 1}."""
    k_max = min(M.rows, M.cols)
    if k_max > guard:
        raise GuardExceeded("min(rows, cols)", k_max, guard)
    if any(x not in (-1, 0, 1) for x in M.entries()):
        return False
    A = [[int(x) for x in M.row(i)] for i in range(M.rows)]
    for k in range(2, k_max + 1):
        for rs in itertools.combinations(range(M.rows), k):
            sub_rows = [A[i] for i in rs]
            for cs in itertools.combinations(range(M.cols), k):
                if int_det([[r[j] for j in cs] for r in sub_rows]) not in (-1, 0, 1):
                    return False
    return True


def bridge_columns(C: VectorConfig) -> frozenset[int]:
    """Coloops: columns whose deletion drops the rank below ``n``."""
    cols = C.columns
    out = set()
    for i in range(C.m):
        if rank_of_vectors(cols[:i] + cols[i + 1:]) < C.n:
            out.add(i)
    return frozenset(out)


@dataclass(frozen=True)
class CentralReduction:
    matrix: QMatrix
    bridges: tuple[int, ...]
    kept_rows: tuple[int, ...]
    dropped_rows: tuple[int, ...]


def valid_row_choices(M: QMatrix) -> list[tuple[int, ...]]:
    """All row subsets that keep the bridge-free column set at full rank."""
    C = load_config(M)
    bridges = bridge_columns(C)
    keep = [j for j in range(C.m) if j not in bridges]
    target = C.n - len(bridges)
    sub = M.submatrix(cols=keep)
    return [rs for rs in itertools.combinations(range(C.n), target)
            if rank(sub.submatrix(rows=rs)) == target]


def central_reduction(M: QMatrix, rows: Sequence[int] | None = None) -> CentralReduction:
    """Delete every bridge column and as many rows as there were bridges.

    The row subset defaults to the lexicographically first valid choice; an
    explicit ``rows`` must be one of :func:`valid_row_choices`.
    """
    C = load_config(M)
    bridges = sorted(bridge_columns(C))
    keep = [j for j in range(C.m) if j not in bridges]
    target = C.n - len(bridges)
    sub = M.submatrix(cols=keep)
    if rows is None:
        rows = next(rs for rs in itertools.combinations(range(C.n), target)
                    if rank(sub.submatrix(rows=rs)) == target)
    else:
        rows = tuple(sorted(rows))
        if len(rows) != target or rank(sub.submatrix(rows=rows)) != target:
            raise RankDeficient(rank(sub.submatrix(rows=rows)), target)
    dropped = tuple(i for i in range(C.n) if i not in rows)
    return CentralReduction(sub.submatrix(rows=rows), tuple(bridges), tuple(rows), dropped)


def central_reduce(M: QMatrix, rows: Sequence[int] | None = None) -> QMatrix:
    return central_reduction(M, rows).matrix


# ---------------------------------------------------------------------------
# isomorphism


def circuits(C: VectorConfig) -> list[int]:
    """Circuits as bitmasks (minimal dependent column sets)."""
    rt = C.rank_table
    out = []
    for mask in range(1, 1 << C.m):
        size = mask.bit_count()
        if rt[mask] != size - 1:
            continue
        if all(rt[mask & ~(1 << e)] == size - 1 for e in range(C.m) if mask >> e & 1):
            out.append(mask)
    return out


def element_signatures(C: VectorConfig) -> list[tuple]:
    """Per-column isomorphism invariants: loop and coloop flags, circuit sizes through it."""
    rt = C.rank_table
    full = rt[-1]
    allmask = (1 << C.m) - 1
    circ_sizes: list[list[int]] = [[] for _ in range(C.m)]
    for c in circuits(C):
        s = c.bit_count()
        for e in range(C.m):
            if c >> e & 1:
                circ_sizes[e].append(s)
    sigs = []
    for e in range(C.m):
        loop = rt[1 << e] == 0
        coloop = rt[allmask & ~(1 << e)] < full
        sigs.append((loop, coloop, tuple(sorted(circ_sizes[e]))))
    return sigs


def matroid_isomorphic(C1: VectorConfig, C2: VectorConfig, guard: int = ISO_GUARD) -> list[int] | None:
    """Column bijection ``sigma`` preserving all subset ranks, or ``None``.

    ``sigma[i]`` is the column of ``C2`` matched to column ``i`` of ``C1``.
    """
    for C in (C1, C2):
        if C.m > guard:
            raise GuardExceeded("columns", C.m, guard)
    if C1.m != C2.m:
        return None
    m = C1.m
    r1, r2 = C1.rank_table, C2.rank_table
    if r1[-1] != r2[-1]:
        return None
    s1, s2 = element_signatures(C1), element_signatures(C2)
    if Counter(s1) != Counter(s2):
        return None

    # most constrained first: rarest signatures lead
    freq = Counter(s1)
    order = sorted(range(m), key=lambda e: (freq[s1[e]], e))
    sigma = [-1] * m
    used = [False] * m

    def extend(level: int, dom_masks: list[int], img_masks: list[int]) -> bool:
        if level == m:
            return True
        e = order[level]
        for f in range(m):
            if used[f] or s2[f] != s1[e]:
                continue
            ok = True
            new_dom, new_img = [], []
            for a, b in zip(dom_masks, img_masks):
                da, ib = a | (1 << e), b | (1 << f)
                if r1[da] != r2[ib]:
                    ok = False
                    break
                new_dom.append(da)
                new_img.append(ib)
            if not ok:
                continue
            used[f] = True
            sigma[e] = f
            if extend(level + 1, dom_masks + new_dom, img_masks + new_img):
                return True
            used[f] = False
            sigma[e] = -1
        return False

    if extend(0, [0], [0]):
        return sigma
    return None


def check_isomorphism(C1: VectorConfig, C2: VectorConfig, sigma: Sequence[int]) -> bool:
    """Exhaustive check that ``sigma`` preserves the rank of all ``2^m`` subsets."""
    if sorted(sigma) != list(range(C1.m)) or C1.m != C2.m:
        return False
    r1, r2 = C1.rank_table, C2.rank_table
    for mask in range(1 << C1.m):
        img = 0
        for e in range(C1.m):
            if mask >> e & 1:
                img |= 1 << sigma[e]
        if r1[mask] != r2[img]:
            return False
    return True


def count_bases(C: VectorConfig) -> int:
    """Number of ``n``-subsets of columns with nonzero determinant."""
    return sum(1 for S in itertools.combinations(range(C.m), C.n)
               if det(C.matrix.submatrix(cols=S)) != 0)


def count_independent_sets(C: VectorConfig) -> int:
    return sum(1 for _, size, r in subset_ranks(C.columns) if r == size)
