"""z-equivalence of matrices with explicit, checkable witnesses.

``A2`` is z-equivalent to ``A1`` when ``A2 = g @ A1 @ P @ diag(D)`` for an
invertible ``g``, a column permutation ``P`` and nonzero column scales ``D``.
The search matches projective column classes by backtracking.  Each matched
pair ``u -> v`` asks that ``g u`` be parallel to ``v``, which is linear in the
entries of ``g`` once written as vanishing 2x2 minors, so the admissible
``g`` always form a linear subspace.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import GuardExceeded, NonWitnessableIsoMatroids, NotUnimodular
from .linalg import (EchelonBasis, QMatrix, canonical_vector, det, diag, inverse,
                     nullspace, permutation_matrix, rank_of_vectors)
from .matroid import ISO_GUARD, is_totally_unimodular, load_config, matroid_isomorphic, tutte
from .reconstruction import ProjMultiset

GRID_LIMIT = 10 ** 5
RANDOM_SAMPLES = 50
EXACT = "exact"
PROBABILISTIC = "probabilistic"


@dataclass(frozen=True)
class ZWitness:
    """``A2 == g @ A1 @ permutation_matrix(perm) @ diag(scales)``.

    Column ``j`` of ``A2`` is ``scales[j] * g @ A1[:, perm[j]]``.
    """

    g: QMatrix
    perm: tuple[int, ...]
    scales: tuple[Fraction, ...]

    def to_json(self) -> dict:
        return {
            "g": [[str(x) for x in self.g.row(i)] for i in range(self.g.rows)],
            "perm": list(self.perm),
            "scales": [str(x) for x in self.scales],
        }


@dataclass(frozen=True)
class ZResult:
    """Outcome of an equivalence search.

    ``mode`` is ``"exact"`` unless some invertibility test fell back to random
    sampling and failed, in which case a negative answer is only probabilistic.
    """

    witness: ZWitness | None
    mode: str = EXACT
    reason: str = ""

    def __bool__(self) -> bool:
        return self.witness is not None

    @property
    def exact(self) -> bool:
        return self.mode == EXACT


def identity_witness(A: QMatrix) -> ZWitness:
    return ZWitness(QMatrix.identity(A.rows), tuple(range(A.cols)), (Fraction(1),) * A.cols)


def apply_witness(A1: QMatrix, w: ZWitness) -> QMatrix:
    return w.g @ A1 @ permutation_matrix(w.perm) @ diag(w.scales)


def verify_witness(A1: QMatrix, A2: QMatrix, w: ZWitness) -> bool:
    if A1.shape != A2.shape:
        return False
    n, m = A1.shape
    if w.g.shape != (n, n) or len(w.perm) != m or len(w.scales) != m:
        return False
    if sorted(w.perm) != list(range(m)) or any(s == 0 for s in w.scales):
        return False
    if det(w.g) == 0:
        return False
    return apply_witness(A1, w) == A2


def compose(w1: ZWitness, w2: ZWitness) -> ZWitness:
    """Witness for ``A1 -> A3`` from ``w1: A1 -> A2`` and ``w2: A2 -> A3``."""
    perm = tuple(w1.perm[p] for p in w2.perm)
    scales = tuple(w2.scales[j] * w1.scales[w2.perm[j]] for j in range(len(w2.perm)))
    return ZWitness(w2.g @ w1.g, perm, scales)


def invert(w: ZWitness) -> ZWitness:
    """Witness for ``A2 -> A1`` given ``w: A1 -> A2``."""
    m = len(w.perm)
    perm = [0] * m
    scales = [Fraction(0)] * m
    for j, p in enumerate(w.perm):
        perm[p] = j
        scales[p] = 1 / w.scales[j]
    return ZWitness(inverse(w.g), tuple(perm), tuple(scales))


def proj_classes(A: QMatrix) -> tuple[ProjMultiset, int]:
    """Projective classes of the nonzero columns, and the number of zero columns."""
    zeros = sum(1 for c in A.columns() if not any(c))
    return ProjMultiset.from_columns(A), zeros


def _class_columns(A: QMatrix) -> dict[tuple[int, ...], list[int]]:
    out: dict[tuple[int, ...], list[int]] = {}
    for j, c in enumerate(A.columns()):
        if any(c):
            out.setdefault(canonical_vector(c), []).append(j)
    return out


def _parallel_constraints(u: Sequence, v: Sequence, n: int) -> list[list[int]]:
    """Rows in the unknowns ``g[a][b]`` (index ``a*n + b``) forcing ``g u`` parallel to ``v``."""
    rows = []
    for i, j in itertools.combinations(range(n), 2):
        row = [0] * (n * n)
        for b in range(n):
            row[i * n + b] += u[b] * v[j]
            row[j * n + b] -= u[b] * v[i]
        if any(row):
            rows.append(row)
    return rows


def _as_matrix(vec: Sequence, n: int) -> QMatrix:
    return QMatrix(n, n, vec)


def _find_invertible(basis: list[tuple[int, ...]], n: int, rng: random.Random) -> tuple[QMatrix | None, str]:
    """Invertible element of ``span(basis)`` (each a flattened n x n matrix).

    ``det`` of a combination has degree at most ``n`` in each parameter, so a
    grid of ``n + 1`` values per parameter decides existence exactly.  When the
    grid is too large, random integer combinations are tried instead.
    """
    d = len(basis)
    if d == 0:
        return None, EXACT

    def combo(ts):
        vec = [sum(t * b[k] for t, b in zip(ts, basis)) for k in range(n * n)]
        return _as_matrix(vec, n)

    if (n + 1) ** d <= GRID_LIMIT:
        first = (1,) * d
        g = combo(first)
        if det(g) != 0:
            return g, EXACT
        for ts in itertools.product(range(n + 1), repeat=d):
            g = combo(ts)
            if det(g) != 0:
                return g, EXACT
        return None, EXACT
    for _ in range(RANDOM_SAMPLES):
        ts = [rng.randint(-10 ** 6, 10 ** 6) for _ in range(d)]
        g = combo(ts)
        if det(g) != 0:
            return g, EXACT
    return None, PROBABILISTIC


def _assemble(A1: QMatrix, A2: QMatrix, g: QMatrix, class_map: dict[tuple, tuple]) -> ZWitness:
    """Build ``perm`` and ``scales`` once ``g`` maps every class of ``A1`` onto its partner."""
    cls1, cls2 = _class_columns(A1), _class_columns(A2)
    m = A1.cols
    perm = [-1] * m
    scales: list[Fraction] = [Fraction(0)] * m
    for u, v in class_map.items():
        for j1, j2 in zip(cls1[u], cls2[v]):
            gy = g.apply(A1.column(j1))
            y2 = A2.column(j2)
            k = next(i for i, x in enumerate(gy) if x)
            perm[j2] = j1
            scales[j2] = y2[k] / gy[k]
    z1 = [j for j, c in enumerate(A1.columns()) if not any(c)]
    z2 = [j for j, c in enumerate(A2.columns()) if not any(c)]
    for j1, j2 in zip(z1, z2):
        perm[j2] = j1
        scales[j2] = Fraction(1)
    return ZWitness(g, tuple(perm), tuple(scales))


def _prefilter(A1: QMatrix, A2: QMatrix) -> str:
    if A1.shape != A2.shape:
        return "shapes differ"
    p1, z1 = proj_classes(A1)
    p2, z2 = proj_classes(A2)
    if z1 != z2:
        return "zero-column counts differ"
    if p1.profile() != p2.profile():
        return "class multiplicity profiles differ"
    if tutte(load_config(A1)) != tutte(load_config(A2)):
        return "Tutte polynomials differ"
    return ""


def z_equivalent(A1: QMatrix, A2: QMatrix, guard: int = ISO_GUARD, seed: int = 0) -> ZResult:
    """Decide z-equivalence, returning a verified witness when one exists."""
    for A in (A1, A2):
        if A.cols > guard:
            raise GuardExceeded("columns", A.cols, guard)
        load_config(A)
    reason = _prefilter(A1, A2)
    if reason:
        return ZResult(None, EXACT, reason)
    if A1 == A2:
        return ZResult(identity_witness(A1), EXACT)
    n = A1.rows
    rng = random.Random(seed)

    cls1, cls2 = _class_columns(A1), _class_columns(A2)
    mult2 = {v: len(cols) for v, cols in cls2.items()}
    # a basis of classes first so the admissible g collapse quickly
    rarity = {}
    for cols in cls1.values():
        rarity[len(cols)] = rarity.get(len(cols), 0) + 1
    pool = sorted(cls1, key=lambda u: (rarity[len(cls1[u])], u))
    order: list[tuple] = []
    for u in pool:
        if rank_of_vectors(order + [u]) > len(order):
            order.append(u)
    order += [u for u in pool if u not in order]

    state = {"mode": EXACT}
    class_map: dict[tuple, tuple] = {}
    used: set[tuple] = set()

    def solve(rows: EchelonBasis) -> list[tuple[int, ...]]:
        if not len(rows):
            return [tuple(1 if k == idx else 0 for k in range(n * n)) for idx in range(n * n)]
        return nullspace(QMatrix.from_rows(rows.basis(), n * n))

    def search(level: int, rows: EchelonBasis) -> QMatrix | None:
        space = solve(rows)
        if not space:
            return None
        if level == len(order):
            g, mode = _find_invertible(space, n, rng)
            if g is None and mode == PROBABILISTIC:
                state["mode"] = PROBABILISTIC
            return g
        if len(space) == 1:
            g = _as_matrix(space[0], n)
            if det(g) == 0:
                return None
            # g is fixed up to scale: every remaining class has a forced partner
            forced = {}
            for u in order[level:]:
                v = canonical_vector(g.apply(u))
                if v in used or v in forced.values() or mult2.get(v) != len(cls1[u]):
                    return None
                forced[u] = v
            class_map.update(forced)
            return g
        u = order[level]
        matched_u = order[:level]
        for v in cls2:
            if v in used or mult2[v] != len(cls1[u]):
                continue
            if rank_of_vectors(matched_u + [u]) != rank_of_vectors([class_map[x] for x in matched_u] + [v]):
                continue
            new_rows = EchelonBasis(n * n)
            new_rows.rows = list(rows.rows)
            for r in _parallel_constraints(u, v, n):
                new_rows.insert(r)
            class_map[u] = v
            used.add(v)
            g = search(level + 1, new_rows)
            if g is not None:
                return g
            del class_map[u]
            used.discard(v)
        return None

    g = search(0, EchelonBasis(n * n))
    if g is None:
        return ZResult(None, state["mode"], "no invertible change of basis")
    w = _assemble(A1, A2, g, dict(class_map))
    if not verify_witness(A1, A2, w):
        raise AssertionError("constructed witness failed verification")
    return ZResult(w, EXACT, "")


def unimodular_equiv_via_matroid(A1: QMatrix, A2: QMatrix, guard: int = ISO_GUARD,
                                 seed: int = 0) -> ZResult:
    """z-equivalence of totally unimodular matrices through a matroid isomorphism.

    The isomorphism fixes which column of ``A2`` each column of ``A1`` goes
    to, so only one linear system for ``g`` is solved.  Failure to find ``g``
    for isomorphic regular matroids raises :class:`NonWitnessableIsoMatroids`.
    """
    for A in (A1, A2):
        if A.cols > guard:
            raise GuardExceeded("columns", A.cols, guard)
        if not is_totally_unimodular(A):
            raise NotUnimodular(f"{A!r} is not totally unimodular")
    C1, C2 = load_config(A1), load_config(A2)
    if A1.shape != A2.shape:
        return ZResult(None, EXACT, "shapes differ")
    sigma = matroid_isomorphic(C1, C2, guard)
    if sigma is None:
        return ZResult(None, EXACT, "matroids not isomorphic")
    n, m = A1.shape
    rows = EchelonBasis(n * n)
    for e in range(m):
        u, v = C1.columns[e], C2.columns[sigma[e]]
        if any(u):
            for r in _parallel_constraints(canonical_vector(u), canonical_vector(v), n):
                rows.insert(r)
    space = nullspace(QMatrix.from_rows(rows.basis(), n * n)) if len(rows) else \
        [tuple(1 if k == i else 0 for k in range(n * n)) for i in range(n * n)]
    g, mode = _find_invertible(space, n, random.Random(seed))
    if g is None:
        raise NonWitnessableIsoMatroids(f"isomorphism {sigma} admits no change of basis ({mode})")
    perm = [0] * m
    scales = [Fraction(1)] * m
    for e in range(m):
        j = sigma[e]
        perm[j] = e
        gy = g.apply(C1.columns[e])
        k = next((i for i, x in enumerate(gy) if x), None)
        if k is not None:
            scales[j] = C2.columns[j][k] / gy[k]
    w = ZWitness(g, tuple(perm), tuple(scales))
    if not verify_witness(A1, A2, w):
        raise NonWitnessableIsoMatroids("assembled witness failed verification")
    return ZResult(w, EXACT, "")
