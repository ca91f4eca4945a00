from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import hilbert_groebner
from strategies import cols, full_rank_matrices
from zonotopal.errors import RankDeficient
from zonotopal.linalg import QMatrix
from zonotopal.matroid import load_config, tutte
from zonotopal.power_ideal import (
    GradedSeries,
    hilbert_of,
    hilbert_series,
    ideal_generators,
    linear_form_power,
    macaulay_hilbert_function,
    total_dimension,
    tutte_specialization,
    verify_tutte_identity,
)
from zonotopal.zonotope import facet_data


def _presentation(A, k):
    return ideal_generators(facet_data(load_config(A)), k)


# -- examples -------------------------------------------------------------------------


@pytest.mark.parametrize("k", [-1, 0, 1, 2])
def test_example_generators(example_A, k):
    P = _presentation(example_A, k)
    assert dict(P.generators) == {(0, 1): 3 + k, (1, 0): 3 + k, (1, 1): 2 + k}


def test_single_column_generators():
    one = QMatrix.from_rows([[1]])
    assert _presentation(one, 1).generators == (((1,), 2),)
    assert _presentation(one, -1).unit_ideal


@pytest.mark.parametrize("k, coeffs, dim", [(1, [1, 2, 3, 3, 1], 10), (0, [1, 2, 2], 5), (-1, [1, 1], 2)])
def test_example_hilbert_series(example_A, k, coeffs, dim):
    P = _presentation(example_A, k)
    assert list(hilbert_series(P)) == coeffs
    assert total_dimension(P) == dim
    assert verify_tutte_identity(load_config(example_A), k)


def test_series_text():
    assert str(GradedSeries((1, 2, 3, 3, 1))) == "1 + 2q + 3q^2 + 3q^3 + q^4"
    assert str(GradedSeries(())) == "0"


def test_single_coloop_identity():
    C = load_config(QMatrix.from_rows([[1]]))
    assert verify_tutte_identity(C, 1)
    assert list(hilbert_of(C, 1)) == [1, 1]


def test_unit_ideal_has_zero_dimension():
    P = _presentation(QMatrix.from_rows([[1]]), -1)
    assert total_dimension(P) == 0
    assert hilbert_series(P) == GradedSeries.zero()


def test_linear_form_power():
    assert linear_form_power((1, 1), 2) == {(2, 0): 1, (1, 1): 2, (0, 2): 1}
    assert linear_form_power((1, -1), 3) == {(3, 0): 1, (2, 1): -3, (1, 2): 3, (0, 3): -1}


def test_tutte_specialization_rejects_other_k(example_A):
    with pytest.raises(ValueError):
        tutte_specialization(tutte(load_config(example_A)), 4, 2, 2)


def test_random_planar_configs_satisfy_identity():
    import random
    rng = random.Random(7)
    checked = 0
    while checked < 10:
        A = QMatrix(2, 4, [rng.randint(-3, 3) for _ in range(8)])
        try:
            C = load_config(A)
        except RankDeficient:
            continue
        for k in (-1, 0, 1):
            assert verify_tutte_identity(C, k)
        checked += 1


# -- properties ---------------------------------------------------------------------------


@given(full_rank_matrices(n_max=3, m_max=5, lo=-2, hi=2), st.sampled_from([-1, 0, 1]))
def test_hilbert_matches_groebner_oracle(A, k):
    P = _presentation(A, k)
    assert list(hilbert_series(P)) == hilbert_groebner(P.n, P.generators)


@given(full_rank_matrices(n_max=3, m_max=6), st.sampled_from([-1, 0, 1]))
def test_tutte_identity_property(A, k):
    C = load_config(A)
    assert hilbert_of(C, k) == tutte_specialization(tutte(C), C.m, C.n, k)


@given(full_rank_matrices(n_max=3, m_max=5, rational=True), st.sampled_from([-1, 0, 1]))
def test_tutte_identity_rational_entries(A, k):
    assert verify_tutte_identity(load_config(A), k)


@given(full_rank_matrices(n_max=3, m_max=6))
def test_hilbert_monotone_in_k(A):
    C = load_config(A)
    series = [hilbert_of(C, k) for k in (-1, 0, 1, 2)]
    for lo, hi in zip(series, series[1:]):
        assert lo <= hi


@given(full_rank_matrices(n_max=3, m_max=6))
def test_low_degrees(A):
    # h_1 = n as long as no generator is linear
    C = load_config(A)
    for k in (0, 1):
        h = hilbert_of(C, k)
        assert h[0] == 1
        if all(e >= 2 for _, e in _presentation(A, k).generators):
            assert h[1] == C.n


@given(full_rank_matrices(n_max=3, m_max=5), st.sampled_from([-1, 0, 1, 2]))
def test_recursive_slices_match_macaulay(A, k):
    P = _presentation(A, k)
    h = hilbert_series(P)
    for d in range(len(h) + 1):
        assert macaulay_hilbert_function(P, d) == h[d]


@given(full_rank_matrices(n_max=3, m_max=6))
def test_dimensions_are_tutte_evaluations(A):
    C = load_config(A)
    T = tutte(C)
    assert hilbert_of(C, 1).total() == T(2, 1)
    assert hilbert_of(C, 0).total() == T(1, 1)
    assert hilbert_of(C, -1).total() == T(0, 1)


def test_two_by_two_identity_columns():
    # unit square: ideal <x^2, y^2>, series (1 + q)^2
    assert list(hilbert_of(load_config(cols((1, 0), (0, 1))), 1)) == [1, 2, 1]
