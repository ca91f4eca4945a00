"""Verification suites replayed by ``zonotopal verify`` and the acceptance tests.

Each suite builds a seeded random corpus, checks one family of identities
exactly, and returns a :class:`CheckResult`.  Per-instance checks are plain
top-level functions so they can be farmed out to worker processes.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import NegativeMultiplicity, NonWitnessableIsoMatroids
from .fileio import EXAMPLE_GRAPH, load_graph
from .graphs import Graph, count_forests, count_spanning_trees, incidence_matrix, is_connected
from .linalg import QMatrix, det, rank
from .matroid import (bridge_columns, central_reduction, is_totally_unimodular, load_config,
                      matroid_isomorphic, tutte, tutte_eval, valid_row_choices)
from .power_ideal import hilbert_of, tutte_specialization
from .reconstruction import ProjMultiset, reconstruct
from .squarefree import SquareFreeElem, generator_images, length, linear_length, make_length_oracle, subalgebra_hilbert
from .zequiv import ZWitness, apply_witness, unimodular_equiv_via_matroid, verify_witness, z_equivalent
from .zonotope import facet_data, interior_lattice_points, lattice_points, volume


@dataclass
class CheckResult:
    name: str
    passed: bool
    instances: int = 0
    failures: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" ({self.instances} instances)" if self.instances else ""
        msg = f"[{status}] {self.name}{extra}"
        if self.failures:
            msg += f": {self.failures[0]}"
            if len(self.failures) > 1:
                msg += f" (+{len(self.failures) - 1} more)"
        return msg

    def to_json(self) -> dict:
        # elapsed time is left out so reports are reproducible byte for byte
        return {"name": self.name, "passed": self.passed, "instances": self.instances,
                "failures": self.failures, "details": self.details}


def _map(fn: Callable, items: Sequence, workers: int = 1) -> list:
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


# ---------------------------------------------------------------------------
# corpora


def random_matrix(rng: random.Random, n_max: int = 3, m_max: int = 6, lo: int = -3, hi: int = 3,
                  zero_columns: bool = True, den: int = 1) -> QMatrix:
    """Full-row-rank matrix with ``n <= n_max``, ``n <= m <= m_max``.

    Entries are rationals in ``[lo, hi]`` with denominator dividing ``den``
    (integers when ``den == 1``).
    """
    n = rng.randint(1, n_max)
    m = rng.randint(n, m_max)

    def entry():
        if den == 1:
            return rng.randint(lo, hi)
        return Fraction(rng.randint(lo * den, hi * den), den)

    while True:
        cols = []
        for _ in range(m):
            while True:
                c = [entry() for _ in range(n)]
                if zero_columns or any(c):
                    break
            cols.append(c)
        A = QMatrix.from_columns(cols, n)
        if rank(A) == n:
            return A


def random_invertible(rng: random.Random, n: int, lo: int = -3, hi: int = 3) -> QMatrix:
    while True:
        g = QMatrix(n, n, [rng.randint(lo, hi) for _ in range(n * n)])
        if det(g) != 0:
            return g


def random_z_transform(rng: random.Random, A: QMatrix) -> ZWitness:
    perm = list(range(A.cols))
    rng.shuffle(perm)
    choices = [Fraction(x) for x in (-3, -2, -1, 1, 2, 3)] + [Fraction(1, 2), Fraction(-2, 3)]
    scales = tuple(rng.choice(choices) for _ in range(A.cols))
    return ZWitness(random_invertible(rng, A.rows), tuple(perm), scales)


def random_graph(rng: random.Random, v_max: int = 6, e_max: int = 9, connected: bool = False) -> Graph:
    while True:
        v = rng.randint(2, v_max)
        e = rng.randint(1, e_max)
        edges = []
        for _ in range(e):
            a = rng.randrange(v)
            b = rng.randrange(v - 1)
            if b >= a:
                b += 1
            edges.append((a, b))
        G = Graph(v, tuple(edges))
        if not connected or is_connected(G):
            return G


# half-integer entries keep the identity corpus genuinely rational
RATIONAL_DEN = 2


def matrix_corpus(count: int, seed: int, **kw) -> list[QMatrix]:
    rng = random.Random(seed)
    return [random_matrix(rng, **kw) for _ in range(count)]


# ---------------------------------------------------------------------------
# 1. worked example


def worked_example() -> CheckResult:
    start = time.perf_counter()
    failures = []

    def expect(label, got, want):
        if got != want:
            failures.append(f"{label}: got {got}, expected {want}")

    G = load_graph(EXAMPLE_GRAPH)
    A = incidence_matrix(G)
    C = load_config(A)
    Z = facet_data(C)
    series = {k: hilbert_of(C, k) for k in (1, 0, -1)}
    expect("Hilb k=1", list(series[1]), [1, 2, 3, 3, 1])
    expect("Hilb k=0", list(series[0]), [1, 2, 2])
    expect("Hilb k=-1", list(series[-1]), [1, 1])
    expect("dimensions", [series[k].total() for k in (1, 0, -1)], [10, 5, 2])
    expect("facet multiplicities", sorted(Z.multiplicities()), [2, 3, 3])
    T = tutte(C)
    expect("Tutte", T.coeffs, {(1, 0): 1, (0, 1): 1, (2, 0): 1, (1, 1): 1, (0, 2): 1})
    expect("lattice points", lattice_points(Z)[0], 10)
    expect("area", volume(C), 5)
    expect("interior points", interior_lattice_points(Z), 2)
    expect("forests", count_forests(G), 10)
    expect("trees", count_spanning_trees(G), 5)
    elapsed = time.perf_counter() - start
    if elapsed >= 1.0:
        failures.append(f"runtime {elapsed:.2f}s >= 1s")
    details = {
        "matrix": [[str(x) for x in A.row(i)] for i in range(A.rows)],
        "hilbert": {str(k): list(s) for k, s in series.items()},
        "tutte": str(T),
    }
    return CheckResult("worked example", not failures, 1, failures, details, elapsed)


# ---------------------------------------------------------------------------
# 2. Tutte specialisations of the Hilbert series


def _tutte_identity_one(A: QMatrix) -> list[str]:
    C = load_config(A)
    T = tutte(C)
    out = []
    for k in (-1, 0, 1):
        lhs = hilbert_of(C, k)
        try:
            rhs = tutte_specialization(T, C.m, C.n, k)
        except ValueError as exc:
            out.append(f"{A!r} k={k}: {exc}")
            continue
        if lhs != rhs:
            out.append(f"{A!r} k={k}: Hilbert {list(lhs)} vs Tutte {list(rhs)}")
    return out


def tutte_identity_suite(count: int = 200, seed: int = 0, workers: int = 1) -> CheckResult:
    start = time.perf_counter()
    corpus = matrix_corpus(count, seed, den=RATIONAL_DEN)
    failures = [f for fs in _map(_tutte_identity_one, corpus, workers) for f in fs]
    elapsed = time.perf_counter() - start
    if elapsed >= 120:
        failures.append(f"runtime {elapsed:.1f}s >= 120s")
    return CheckResult("Hilbert series = Tutte specialisation (k = -1, 0, 1)",
                       not failures, count, failures, {}, elapsed)


# ---------------------------------------------------------------------------
# 3. square-free model


def _subalgebra_one(A: QMatrix) -> list[str]:
    lhs = subalgebra_hilbert(A)
    rhs = hilbert_of(load_config(A), 1)
    return [] if lhs == rhs else [f"{A!r}: subalgebra {list(lhs)} vs external {list(rhs)}"]


def _length_one(args: tuple[QMatrix, tuple]) -> list[str]:
    A, b = args
    X = generator_images(A)
    elem = SquareFreeElem(A.cols)
    for coef, Xi in zip(b, X):
        elem = elem + Fraction(coef) * Xi
    got, want = length(elem), linear_length(A, b)
    return [] if got == want else [f"{A!r} b={b}: powering {got} vs closed form {want}"]


def squarefree_suite(count: int = 200, pairs: int = 1000, seed: int = 0, workers: int = 1) -> CheckResult:
    start = time.perf_counter()
    corpus = matrix_corpus(count, seed, den=RATIONAL_DEN)
    failures = [f for fs in _map(_subalgebra_one, corpus, workers) for f in fs]
    rng = random.Random(seed + 1)
    jobs = []
    for _ in range(pairs):
        A = random_matrix(rng, zero_columns=False)
        # small coefficients make accidental cancellations (length drops) common
        b = tuple(rng.choice([0, 0, 1, -1, 2, -2, 3, Fraction(1, 2)]) for _ in range(A.rows))
        jobs.append((A, b))
    failures += [f for fs in _map(_length_one, jobs, workers) for f in fs]
    return CheckResult("subalgebra Hilbert series and length closed form", not failures,
                       count + pairs, failures, {"matrices": count, "length_pairs": pairs},
                       time.perf_counter() - start)


# ---------------------------------------------------------------------------
# 4. graphs: lattice points, volume, forests, trees


def _graph_one(G: Graph) -> list[str]:
    A = incidence_matrix(G)
    C = load_config(A)
    Z = facet_data(C)
    T = tutte(C)
    out = []
    if not is_totally_unimodular(A):
        out.append(f"{G}: incidence matrix not totally unimodular")
    dims = {k: hilbert_of(C, k).total() for k in (1, 0, -1)}
    forests = count_forests(G)
    pts = lattice_points(Z)[0]
    if not dims[1] == forests == pts == tutte_eval(T, 2, 1):
        out.append(f"{G}: dim Ex {dims[1]}, forests {forests}, points {pts}, T(2,1) {tutte_eval(T, 2, 1)}")
    trees = count_spanning_trees(G)
    vol = volume(C)
    if not dims[0] == vol == tutte_eval(T, 1, 1):
        out.append(f"{G}: dim Cen {dims[0]}, volume {vol}, T(1,1) {tutte_eval(T, 1, 1)}")
    if is_connected(G) and trees != dims[0]:
        out.append(f"{G}: trees {trees} vs dim Cen {dims[0]}")
    interior = interior_lattice_points(Z)
    if dims[-1] != interior:
        out.append(f"{G}: dim In {dims[-1]} vs interior points {interior}")
    return out


def graph_suite(count: int = 50, seed: int = 0, workers: int = 1) -> CheckResult:
    start = time.perf_counter()
    rng = random.Random(seed + 2)
    graphs = [random_graph(rng, connected=(i % 2 == 0)) for i in range(count)]
    failures = [f for fs in _map(_graph_one, graphs, workers) for f in fs]
    return CheckResult("graph dimensions = forests / trees / lattice points / volume", not failures,
                       count, failures, {"connected": sum(is_connected(G) for G in graphs)},
                       time.perf_counter() - start)


# ---------------------------------------------------------------------------
# 5. reconstruction from lengths


def _reconstruct_one(args: tuple[QMatrix, int]) -> tuple[list[str], int]:
    A, seed = args
    try:
        got = reconstruct(make_length_oracle(A), seed=seed)
    except NegativeMultiplicity as exc:
        return [f"{A!r}: {exc}"], 1
    want = ProjMultiset.from_columns(A)
    return ([] if got == want else [f"{A!r}: reconstructed {got}, expected {want}"]), 0


def reconstruction_suite(count: int = 100, seed: int = 0, workers: int = 1) -> CheckResult:
    start = time.perf_counter()
    corpus = matrix_corpus(count, seed + 3, zero_columns=False)
    results = _map(_reconstruct_one, [(A, seed) for A in corpus], workers)
    failures = [f for fs, _ in results for f in fs]
    negatives = sum(neg for _, neg in results)
    return CheckResult("reconstruction round-trip from length oracle", not failures, count, failures,
                       {"negative_multiplicity_events": negatives}, time.perf_counter() - start)


# ---------------------------------------------------------------------------
# 6. z-equivalence


U24_A = QMatrix.from_columns([[1, 0], [0, 1], [1, 1], [1, 2]])
U24_B = QMatrix.from_columns([[1, 0], [0, 1], [1, 1], [1, 3]])


def _zequiv_one(args: tuple[QMatrix, ZWitness]) -> list[str]:
    A, w = args
    B = apply_witness(A, w)
    out = []
    res = z_equivalent(A, B)
    if not res or not verify_witness(A, B, res.witness):
        return [f"{A!r}: no verified witness for a constructed pair"]
    C1, C2 = load_config(A), load_config(B)
    if matroid_isomorphic(C1, C2) is None:
        out.append(f"{A!r}: z-equivalent but matroids not isomorphic")
    if hilbert_of(C1, 1) != hilbert_of(C2, 1):
        out.append(f"{A!r}: external Hilbert series differ")
    if sorted(facet_data(C1).multiplicities()) != sorted(facet_data(C2).multiplicities()):
        out.append(f"{A!r}: facet multiplicities differ")
    if tutte(C1) != tutte(C2):
        out.append(f"{A!r}: Tutte polynomials differ")
    return out


def zequiv_suite(count: int = 50, seed: int = 0, workers: int = 1) -> CheckResult:
    start = time.perf_counter()
    rng = random.Random(seed + 4)
    jobs = []
    for _ in range(count):
        A = random_matrix(rng)
        jobs.append((A, random_z_transform(rng, A)))
    failures = [f for fs in _map(_zequiv_one, jobs, workers) for f in fs]

    res = z_equivalent(U24_A, U24_B)
    iso = matroid_isomorphic(load_config(U24_A), load_config(U24_B))
    if res or not res.exact:
        failures.append(f"cross-ratio pair: expected an exact 'not equivalent', got {res}")
    if iso is None:
        failures.append("cross-ratio pair: matroids should be isomorphic")
    details = {"cross_ratio_pair": {"equivalent": bool(res), "mode": res.mode,
                                    "matroid_isomorphic": iso is not None}}
    return CheckResult("z-equivalence witnesses, cross-ratio separation, matroid implication",
                       not failures, count + 1, failures, details, time.perf_counter() - start)


# ---------------------------------------------------------------------------
# 7. unimodular matrices: matroid isomorphism suffices


def _unimodular_one(args: tuple[Graph, list, list, list, list]) -> tuple[list[str], int]:
    G, orient1, orient2, drop2, shuffle = args
    A1 = incidence_matrix(G, orient1)
    H = Graph(G.v, tuple(G.edges[j] for j in shuffle))
    A2 = incidence_matrix(H, [orient2[j] for j in shuffle], drop2)
    C1, C2 = load_config(A1), load_config(A2)
    if matroid_isomorphic(C1, C2) is None:
        return [f"{G}: matroids of two incidence matrices not isomorphic"], 0
    try:
        res = unimodular_equiv_via_matroid(A1, A2)
    except NonWitnessableIsoMatroids as exc:
        return [f"{G}: {exc}"], 1
    if not res or not verify_witness(A1, A2, res.witness):
        return [f"{G}: no verified witness"], 0
    return [], 0


def unimodular_suite(count: int = 30, seed: int = 0, workers: int = 1) -> CheckResult:
    from .graphs import components

    start = time.perf_counter()
    rng = random.Random(seed + 5)
    jobs = []
    for _ in range(count):
        G = random_graph(rng)
        orient1 = [rng.random() < 0.5 for _ in G.edges]
        orient2 = [rng.random() < 0.5 for _ in G.edges]
        drop2 = [rng.choice(c) for c in components(G)]
        shuffle = list(range(G.e))
        rng.shuffle(shuffle)
        jobs.append((G, orient1, orient2, drop2, shuffle))
    results = _map(_unimodular_one, jobs, workers)
    failures = [f for fs, _ in results for f in fs]
    events = sum(e for _, e in results)
    return CheckResult("unimodular pairs: matroid isomorphism gives z-equivalence", not failures, count,
                       failures, {"non_witnessable_events": events}, time.perf_counter() - start)


# ---------------------------------------------------------------------------
# 8. central reduction


def random_bridge_free(rng: random.Random) -> QMatrix:
    while True:
        A = random_matrix(rng, n_max=3, m_max=5, zero_columns=False)
        if not bridge_columns(load_config(A)):
            return A


def plant_bridges(rng: random.Random, core: QMatrix, k: int) -> tuple[QMatrix, list[int]]:
    """Append ``k`` coloops to ``core``, disguise by a change of basis and a shuffle.

    Returns the new matrix and the positions of the planted columns.
    """
    n0, m0 = core.shape
    rows = []
    for i in range(n0):
        rows.append(list(core.row(i)) + [rng.randint(-2, 2) for _ in range(k)])
    for t in range(k):
        rows.append([0] * m0 + [1 if s == t else 0 for s in range(k)])
    A = QMatrix.from_rows(rows, m0 + k)
    g = random_invertible(rng, n0 + k, -2, 2)
    perm = list(range(m0 + k))
    rng.shuffle(perm)
    B = (g @ A).submatrix(cols=perm)
    planted = sorted(j for j, p in enumerate(perm) if p >= m0)
    return B, planted


def _central_one(args: tuple[QMatrix, QMatrix, list[int], QMatrix]) -> list[str]:
    A, core, planted, partner = args
    out = []
    red = central_reduction(A)
    if list(red.bridges) != planted:
        out.append(f"{A!r}: bridges {list(red.bridges)} vs planted {planted}")
        return out
    reductions = [central_reduction(A, rows).matrix for rows in valid_row_choices(A)]
    for R in reductions[1:]:
        if not z_equivalent(reductions[0], R):
            out.append(f"{A!r}: reductions under different row choices are not z-equivalent")
            break
    if not z_equivalent(red.matrix, core):
        out.append(f"{A!r}: reduction not z-equivalent to the planted core")
    cen = hilbert_of(load_config(A), 0)
    if cen != hilbert_of(load_config(red.matrix), 0):
        out.append(f"{A!r}: central series changes under reduction")
    red2 = central_reduce(partner)
    if z_equivalent(red.matrix, red2) and hilbert_of(load_config(partner), 0) != cen:
        out.append(f"{A!r}: reduced-equivalent partner has a different central series")
    return out


def central_reduce(M: QMatrix) -> QMatrix:
    return central_reduction(M).matrix


def central_reduction_suite(count: int = 30, seed: int = 0, workers: int = 1) -> CheckResult:
    start = time.perf_counter()
    rng = random.Random(seed + 6)
    jobs = []
    for _ in range(count):
        core = random_bridge_free(rng)
        A, planted = plant_bridges(rng, core, rng.randint(1, 2))
        # an independently disguised core with a different number of bridges
        other = apply_witness(core, random_z_transform(rng, core))
        partner, _ = plant_bridges(rng, other, rng.randint(0, 2))
        jobs.append((A, core, planted, partner))
    failures = [f for fs in _map(_central_one, jobs, workers) for f in fs]
    return CheckResult("central reduction: coloops removed, row choice irrelevant, central series kept",
                       not failures, count, failures, {}, time.perf_counter() - start)


SUITES = {
    "tutte": tutte_identity_suite,
    "squarefree": squarefree_suite,
    "graphs": graph_suite,
    "reconstruction": reconstruction_suite,
    "zequiv": zequiv_suite,
    "unimodular": unimodular_suite,
    "central": central_reduction_suite,
}
