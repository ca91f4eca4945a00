"""Exact rational matrices and fraction-free elimination.

Scalars are :class:`fractions.Fraction`; every routine here is exact.  Rank,
determinant and nullspace clear denominators row by row and then run
Bareiss elimination over the integers with full pivoting, so intermediate
entries stay bounded by minors of the input.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import NonSquare, ParseError, SizeMismatch

Rational = Fraction

_RATIONAL_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"-3/2"`` or ``"7"``.  Decimals and zero denominators are rejected."""
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise ParseError(f"not a rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ParseError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        raise TypeError("floating-point entries are not accepted; use Fraction or str")
    return Fraction(x)


class QMatrix:
    """Immutable dense matrix of rationals, stored row-major."""

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        data = tuple(_as_fraction(x) for x in entries)
        if len(data) != rows * cols:
            raise SizeMismatch(f"{len(data)} entries for a {rows}x{cols} matrix")
        self.rows = rows
        self.cols = cols
        self._data = data
        self._hash = None

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "QMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise SizeMismatch("ragged rows")
        return cls(len(rows), cols, (x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "QMatrix":
        columns = [list(c) for c in columns]
        if rows is None:
            if not columns:
                raise SizeMismatch("row count required for an empty column list")
            rows = len(columns[0])
        for c in columns:
            if len(c) != rows:
                raise SizeMismatch("columns of unequal length")
        return cls(rows, len(columns), (columns[j][i] for i in range(rows) for j in range(len(columns))))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, (1 if i == j else 0 for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self._data[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._data[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(self._data[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def transpose(self) -> "QMatrix":
        return QMatrix(self.cols, self.rows, (self._data[i * self.cols + j]
                                              for j in range(self.cols) for i in range(self.rows)))

    T = property(transpose)

    def submatrix(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None) -> "QMatrix":
        rows = range(self.rows) if rows is None else list(rows)
        cols = range(self.cols) if cols is None else list(cols)
        return QMatrix(len(rows), len(cols), (self[i, j] for i in rows for j in cols))

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise SizeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        ocols = other.columns()
        for i in range(self.rows):
            r = self.row(i)
            for c in ocols:
                out.append(sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)))
        return QMatrix(self.rows, other.cols, out)

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        if len(v) != self.cols:
            raise SizeMismatch("vector length does not match column count")
        return tuple(sum((a * b for a, b in zip(self.row(i), v) if a and b), Fraction(0))
                     for i in range(self.rows))

    def scale(self, c) -> "QMatrix":
        c = _as_fraction(c)
        return QMatrix(self.rows, self.cols, (c * x for x in self._data))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self._data)

    def entries(self) -> tuple[Fraction, ...]:
        return self._data

    def __eq__(self, other) -> bool:
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))
        return f"QMatrix({self.rows}x{self.cols}: [{body}])"

    def to_text(self) -> str:
        """Serialize in the matrix file format (header ``n m`` then rows)."""
        lines = [f"{self.rows} {self.cols}"]
        lines += [" ".join(str(x) for x in self.row(i)) for i in range(self.rows)]
        return "\n".join(lines) + "\n"


def diag(values: Sequence) -> QMatrix:
    n = len(values)
    return QMatrix(n, n, (values[i] if i == j else 0 for i in range(n) for j in range(n)))


def permutation_matrix(perm: Sequence[int]) -> QMatrix:
    """Matrix ``P`` with ``(A @ P)[:, j] == A[:, perm[j]]``."""
    m = len(perm)
    return QMatrix(m, m, (1 if perm[j] == i else 0 for i in range(m) for j in range(m)))


# ---------------------------------------------------------------------------
# integer kernels


def integer_row(values: Sequence) -> list[int]:
    """Scale a rational row by the lcm of its denominators."""
    if all(type(v) is int for v in values):
        return list(values)
    fr = [_as_fraction(v) for v in values]
    den = reduce(lcm, (x.denominator for x in fr), 1)
    return [int(x * den) for x in fr]


def primitive(values: Sequence) -> tuple[int, ...]:
    """Primitive integer vector on the same ray: denominators cleared, gcd 1, sign kept."""
    ints = integer_row(values)
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def canonical_vector(values: Sequence) -> tuple[int, ...]:
    """Canonical representative of a line: primitive integer, first nonzero entry positive."""
    p = primitive(values)
    for x in p:
        if x:
            if x < 0:
                p = tuple(-y for y in p)
            break
    return p


def _bareiss(rows: list[list[int]], *, jordan: bool = False):
    """Fraction-free elimination with full pivoting, in place.

    Returns ``(rank, pivot_cols, sign, last_pivot)``.  ``rows`` ends in echelon
    form over the column order given by ``pivot_cols`` followed by the rest.
    With ``jordan=True`` entries above pivots are cleared too, leaving every
    pivot equal to ``last_pivot`` (the classic Bareiss–Jordan normal form).
    ``sign`` tracks row and column swaps for determinants.
    """
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    col_order = list(range(nc))
    prev = 1
    sign = 1
    r = 0
    while r < nr and r < nc:
        best = None
        for i in range(r, nr):
            ri = rows[i]
            for jj in range(r, nc):
                v = ri[col_order[jj]]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, jj)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        if pi != r:
            rows[r], rows[pi] = rows[pi], rows[r]
            sign = -sign
        if pj != r:
            col_order[r], col_order[pj] = col_order[pj], col_order[r]
            sign = -sign
        pc = col_order[r]
        prow = rows[r]
        p = prow[pc]
        targets = range(nr) if jordan else range(r + 1, nr)
        for i in targets:
            if i == r:
                continue
            ri = rows[i]
            f = ri[pc]
            # rows with f == 0 still need the p/prev rescale for exact division later
            if f:
                rows[i] = [(p * a - f * b) // prev for a, b in zip(ri, prow)]
            else:
                rows[i] = [(p * a) // prev for a in ri]
        prev = p
        r += 1
    return r, col_order[:r], sign, prev


def _int_rows(M: QMatrix) -> tuple[list[list[int]], Fraction]:
    """Integer rows of ``M`` and the product of the per-row scale factors."""
    rows = []
    scale = Fraction(1)
    for i in range(M.rows):
        row = M.row(i)
        den = reduce(lcm, (x.denominator for x in row), 1)
        rows.append([int(x * den) for x in row])
        scale *= den
    return rows, scale


def rank(M: QMatrix) -> int:
    """Dimension of the row space."""
    if M.rows == 0 or M.cols == 0:
        return 0
    rows, _ = _int_rows(M)
    return _bareiss(rows)[0]


def rank_of_vectors(vectors: Sequence[Sequence], dim: int | None = None) -> int:
    vectors = [integer_row(v) for v in vectors]
    if not vectors:
        return 0
    return _bareiss(vectors)[0]


def det(M: QMatrix) -> Fraction:
    if M.rows != M.cols:
        raise NonSquare(f"determinant of a {M.rows}x{M.cols} matrix")
    if M.rows == 0:
        return Fraction(1)
    rows, scale = _int_rows(M)
    r, _, sign, last = _bareiss(rows)
    if r < M.rows:
        return Fraction(0)
    return Fraction(sign * last) / scale


def int_det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix given as nested lists."""
    n = len(rows)
    if n == 0:
        return 1
    work = [list(r) for r in rows]
    r, _, sign, last = _bareiss(work)
    return sign * last if r == n else 0


def nullspace(M: QMatrix) -> list[tuple[int, ...]]:
    """Basis of ``{v : M v = 0}`` as canonical primitive integer vectors.

    Uses the Bareiss–Jordan form: with every pivot equal to ``d`` the kernel
    vector for free column ``f`` is ``d`` at ``f`` and minus column ``f`` at
    the pivot positions, all in integers.
    """
    n = M.cols
    if M.rows == 0:
        return [canonical_vector([1 if i == j else 0 for i in range(n)]) for j in range(n)]
    rows, _ = _int_rows(M)
    r, pivots, _, d = _bareiss(rows, jordan=True)
    free = [j for j in range(n) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = d
        for k, pc in enumerate(pivots):
            v[pc] = -rows[k][f]
        basis.append(canonical_vector(v))
    return basis


def rref(M: QMatrix) -> tuple[QMatrix, list[int]]:
    """Reduced row echelon form over Q (partial pivoting, natural column order)."""
    A = M.to_rows()
    pivots = []
    r = 0
    for c in range(M.cols):
        piv = next((i for i in range(r, M.rows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        A[r] = [x / p for x in A[r]]
        for i in range(M.rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == M.rows:
            break
    return QMatrix.from_rows(A, M.cols), pivots


def solve(M: QMatrix, b: Sequence) -> tuple[Fraction, ...] | None:
    """One solution of ``M x = b`` or ``None`` if inconsistent."""
    aug = QMatrix.from_rows([list(M.row(i)) + [_as_fraction(b[i])] for i in range(M.rows)], M.cols + 1)
    R, pivots = rref(aug)
    if M.cols in pivots:
        return None
    x = [Fraction(0)] * M.cols
    for k, pc in enumerate(pivots):
        x[pc] = R[k, M.cols]
    return tuple(x)


def inverse(M: QMatrix) -> QMatrix:
    if M.rows != M.cols:
        raise NonSquare("inverse of a non-square matrix")
    n = M.rows
    aug = QMatrix.from_rows([list(M.row(i)) + [1 if i == j else 0 for j in range(n)] for i in range(n)], 2 * n)
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return R.submatrix(cols=range(n, 2 * n))


class EchelonBasis:
    """Incrementally maintained integer echelon basis of a subspace of Q^dim.

    Rows are kept primitive; each inserted vector is reduced against the rows
    in insertion order, which leaves it zero at every existing pivot.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: list[tuple[int, list[int]]] = []

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def full(self) -> bool:
        return len(self.rows) == self.dim

    def reduce(self, v: Sequence) -> list[int]:
        w = integer_row(v)
        for p, b in self.rows:
            f = w[p]
            if f:
                bp = b[p]
                w = [bp * x - f * y for x, y in zip(w, b)]
                g = reduce(gcd, w, 0)
                if g > 1:
                    w = [x // g for x in w]
        return w

    def insert(self, v: Sequence) -> bool:
        """Add ``v``; return whether it enlarged the span."""
        if self.full:
            return False
        w = self.reduce(v)
        piv = next((k for k, x in enumerate(w) if x), None)
        if piv is None:
            return False
        g = reduce(gcd, w, 0)
        self.rows.append((piv, [x // g for x in w]))
        return True

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def basis(self) -> list[list[int]]:
        return [b for _, b in self.rows]
