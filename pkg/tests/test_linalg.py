from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from oracles import to_sympy
from strategies import fractions, int_matrices, rational_matrices
from zonotopal.errors import NonSquare, ParseError, SizeMismatch
from zonotopal.linalg import (
    EchelonBasis,
    QMatrix,
    canonical_vector,
    det,
    format_rational,
    inverse,
    nullspace,
    parse_rational,
    permutation_matrix,
    rank,
    solve,
)


# -- examples ---------------------------------------------------------------


def test_rank_examples(example_A):
    assert rank(example_A) == 2
    assert rank(QMatrix.zeros(3, 3)) == 0
    assert rank(QMatrix.identity(4)) == 4


def test_nullspace_examples():
    assert nullspace(QMatrix.from_rows([[1, 1]])) == [(1, -1)]
    assert nullspace(QMatrix.identity(3)) == []
    assert nullspace(QMatrix.from_rows([[-1, 0]])) == [(0, 1)]


def test_det_examples(example_A):
    assert det(QMatrix.from_rows([[-1, 0], [0, -1]])) == 1
    # columns 1 and 3 of the example matrix
    assert det(example_A.submatrix(cols=[0, 2])) == 1
    assert det(QMatrix.from_rows([[1, 2], [2, 4]])) == 0


def test_det_rejects_non_square():
    with pytest.raises(NonSquare):
        det(QMatrix.zeros(2, 3))


def test_size_mismatch():
    with pytest.raises(SizeMismatch):
        QMatrix(2, 2, [1, 2, 3])


def test_floats_rejected():
    with pytest.raises(TypeError):
        QMatrix(1, 1, [0.5])


def test_empty_shapes():
    assert rank(QMatrix.zeros(0, 0)) == 0
    assert det(QMatrix.zeros(0, 0)) == 1
    assert nullspace(QMatrix.zeros(0, 2)) == [(1, 0), (0, 1)]


@pytest.mark.parametrize("text, value", [("7", Fraction(7)), ("-3/2", Fraction(-3, 2)),
                                         ("+4/6", Fraction(2, 3)), (" 0 ", Fraction(0))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["1.5", "1/0", "abc", "", "1/-2", "2e3"])
def test_parse_rational_rejects(text):
    with pytest.raises(ParseError):
        parse_rational(text)


def test_permutation_matrix_moves_columns(example_A):
    perm = [2, 0, 3, 1]
    B = example_A @ permutation_matrix(perm)
    for j, p in enumerate(perm):
        assert B.column(j) == example_A.column(p)


def test_canonical_vector():
    assert canonical_vector([Fraction(-1, 2), Fraction(1, 3)]) == (3, -2)
    assert canonical_vector([0, -4, 6]) == (0, 2, -3)


# -- properties against sympy -------------------------------------------------


@given(rational_matrices())
def test_rank_matches_sympy(M):
    assert rank(M) == to_sympy(M.to_rows()).rank()


@given(rational_matrices())
def test_rank_transpose(M):
    assert rank(M) == rank(M.T)


@given(st.integers(1, 4).flatmap(lambda n: st.lists(fractions, min_size=n * n, max_size=n * n)
                                 .map(lambda e, n=n: QMatrix(n, n, e))))
def test_det_matches_sympy_and_rank(M):
    d = det(M)
    assert d == Fraction(str(to_sympy(M.to_rows()).det()))
    assert (d != 0) == (rank(M) == M.rows)
    if d != 0:
        assert M @ inverse(M) == QMatrix.identity(M.rows)


@given(rational_matrices())
def test_nullspace_is_kernel_basis(M):
    basis = nullspace(M)
    assert len(basis) == M.cols - rank(M)
    for v in basis:
        assert all(x == 0 for x in M.apply(v))
        assert canonical_vector(v) == v
    if basis:
        assert rank(QMatrix.from_rows(basis, M.cols)) == len(basis)
    assert len(basis) == len(to_sympy(M.to_rows()).nullspace())


@given(rational_matrices(), st.data())
def test_solve_consistency(M, data):
    x = data.draw(st.lists(fractions, min_size=M.cols, max_size=M.cols))
    b = M.apply(x)
    y = solve(M, b)
    assert y is not None and M.apply(y) == b


@given(fractions)
def test_rational_round_trip(x):
    assert parse_rational(format_rational(x)) == x


@given(int_matrices(n_max=4, m_max=5))
def test_text_round_trip(M):
    from zonotopal.fileio import parse_matrix
    assert parse_matrix(M.to_text()) == M


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), max_size=8))
def test_echelon_basis_tracks_rank(vectors):
    E = EchelonBasis(4)
    for v in vectors:
        E.insert(v)
    expected = sympy.Matrix(vectors).rank() if vectors else 0
    assert len(E) == expected
    for v in vectors:
        assert E.contains(v)
