from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from strategies import cols, full_rank_matrices
from zonotopal.errors import NotUnimodular
from zonotopal.graphs import Graph, incidence_matrix
from zonotopal.linalg import QMatrix
from zonotopal.matroid import load_config, matroid_isomorphic
from zonotopal.power_ideal import hilbert_of
from zonotopal.reconstruction import ProjMultiset, ProjPoint
from zonotopal.suites import random_z_transform
from zonotopal.zequiv import (
    EXACT,
    ZWitness,
    apply_witness,
    compose,
    identity_witness,
    invert,
    proj_classes,
    unimodular_equiv_via_matroid,
    verify_witness,
    z_equivalent,
)

U24_A = cols((1, 0), (0, 1), (1, 1), (1, 2))
U24_B = cols((1, 0), (0, 1), (1, 1), (1, 3))


def _brute_z_equivalent(A1: QMatrix, A2: QMatrix) -> bool:
    """Search all column matchings; each gives a linear system in (g, scales).

    A matching works iff the polynomial det(g) * prod(scales) is not identically
    zero on the solution space of ``g A1[:, p(j)] = d_j A2[:, j]``.
    """
    n, m = A1.shape
    g = sympy.Matrix(n, n, sympy.symbols(f"g0:{n * n}"))
    d = sympy.symbols(f"d0:{m}")
    unknowns = list(g) + list(d)
    for perm in itertools.permutations(range(m)):
        eqs = []
        for j, p in enumerate(perm):
            u = sympy.Matrix([A1[i, p] for i in range(n)])
            v = sympy.Matrix([A2[i, j] for i in range(n)])
            eqs.extend(list(g * u - d[j] * v))
        M = sympy.Matrix([[sympy.diff(e, x) for x in unknowns] for e in eqs])
        ker = M.nullspace()
        if not ker:
            continue
        ts = sympy.symbols(f"t0:{len(ker)}")
        sol = sum((t * k for t, k in zip(ts, ker)), sympy.zeros(len(unknowns), 1))
        gs = sympy.Matrix(n, n, list(sol[: n * n]))
        poly = sympy.expand(gs.det() * sympy.prod(sol[n * n:]))
        if poly != 0:
            return True
    return False


# -- examples -----------------------------------------------------------------------------


def test_proj_classes_examples(example_A):
    P = ProjPoint.of
    assert proj_classes(example_A) == (ProjMultiset({P((1, 0)): 1, P((0, 1)): 1, P((1, -1)): 2}), 0)
    assert proj_classes(cols((1, 0), (1, 0), (0, 0))) == (ProjMultiset({P((1, 0)): 2}), 1)
    assert proj_classes(QMatrix.from_rows([[1]])) == (ProjMultiset({P((1,)): 1}), 0)


def test_constructed_pair_is_found(example_A):
    rng = random.Random(3)
    w = random_z_transform(rng, example_A)
    A2 = apply_witness(example_A, w)
    r = z_equivalent(example_A, A2)
    assert r and r.exact and verify_witness(example_A, A2, r.witness)
    assert _brute_z_equivalent(example_A, A2)


def test_cross_ratio_pair_is_not_equivalent():
    r = z_equivalent(U24_A, U24_B)
    assert not r and r.mode == EXACT
    assert matroid_isomorphic(load_config(U24_A), load_config(U24_B)) is not None
    assert not _brute_z_equivalent(U24_A, U24_B)


def test_parallel_profile_mismatch():
    r = z_equivalent(cols((1, 0), (0, 1), (1, 1)), cols((1, 0), (1, 0), (0, 1)))
    assert not r and r.exact and r.reason


def test_self_equivalence_returns_identity(example_A):
    r = z_equivalent(example_A, example_A)
    assert r.witness == identity_witness(example_A)


def test_witness_checks(example_A):
    w = identity_witness(example_A)
    assert verify_witness(example_A, example_A, w)
    broken = ZWitness(w.g, w.perm, (Fraction(0),) + w.scales[1:])
    assert not verify_witness(example_A, example_A, broken)
    singular = ZWitness(QMatrix.zeros(2, 2), w.perm, w.scales)
    assert not verify_witness(example_A, example_A, singular)
    assert not verify_witness(example_A, example_A, ZWitness(w.g, (0, 0, 1, 2), w.scales))


def test_unimodular_examples(example_A, example_G):
    other_drop = incidence_matrix(example_G, dropped=[1])
    r = unimodular_equiv_via_matroid(example_A, other_drop)
    assert r and verify_witness(example_A, other_drop, r.witness)
    k4 = Graph(4, tuple(itertools.combinations(range(4), 2)))
    A = incidence_matrix(k4)
    B = incidence_matrix(k4, orientation=[False, False, True, False, False, False])
    r = unimodular_equiv_via_matroid(A, B)
    assert r and verify_witness(A, B, r.witness)


def test_unimodular_route_rejects_non_unimodular():
    with pytest.raises(NotUnimodular):
        unimodular_equiv_via_matroid(U24_A, U24_A)


def test_unimodular_non_isomorphic():
    tri = Graph(3, ((0, 1), (1, 2), (0, 2)))
    doubled = Graph(3, ((0, 1), (0, 1), (1, 2)))
    r = unimodular_equiv_via_matroid(incidence_matrix(tri), incidence_matrix(doubled))
    assert not r and r.reason == "matroids not isomorphic"


# -- properties -------------------------------------------------------------------------------


@given(full_rank_matrices(n_max=3, m_max=6), st.integers(0, 10 ** 6))
def test_transforms_are_detected(A, seed):
    w = random_z_transform(random.Random(seed), A)
    A2 = apply_witness(A, w)
    r = z_equivalent(A, A2)
    assert r and verify_witness(A, A2, r.witness)
    # equivalent configurations have equal external series
    assert hilbert_of(load_config(A), 1) == hilbert_of(load_config(A2), 1)


@given(full_rank_matrices(n_max=3, m_max=5), st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_compose_and_invert(A, s1, s2):
    w1 = random_z_transform(random.Random(s1), A)
    B = apply_witness(A, w1)
    w2 = random_z_transform(random.Random(s2), B)
    C = apply_witness(B, w2)
    assert verify_witness(B, A, invert(w1))
    assert verify_witness(A, C, compose(w1, w2))


@given(full_rank_matrices(n_min=2, n_max=2, m_max=4, lo=-2, hi=2),
       full_rank_matrices(n_min=2, n_max=2, m_max=4, lo=-2, hi=2))
def test_decision_matches_brute_force(A1, A2):
    if A1.shape != A2.shape:
        assert not z_equivalent(A1, A2)
        return
    r = z_equivalent(A1, A2)
    assert bool(r) == _brute_z_equivalent(A1, A2)
    if r:
        assert verify_witness(A1, A2, r.witness)
