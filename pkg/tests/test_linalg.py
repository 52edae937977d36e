from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from diagcomplex.errors import NotAComplex
from diagcomplex.linalg import SparseMatrix, cohomology_dim, rank, rref


def test_identity():
    r, ker = rref(SparseMatrix.from_dense([[1, 0], [0, 1]]))
    assert r == 2 and ker == []


def test_rank_one():
    r, ker = rref(SparseMatrix.from_dense([[1, 1], [1, 1]]))
    assert r == 1
    assert ker == [[Fraction(-1), Fraction(1)]]


def test_zero_row():
    r, ker = rref(SparseMatrix.from_dense([[0, 0]]))
    assert r == 0 and len(ker) == 2


def test_cohomology_trivial_maps():
    assert cohomology_dim(SparseMatrix(3, 0), SparseMatrix(0, 3)) == 3


def test_cohomology_identity_in():
    eye = SparseMatrix.from_dense([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert cohomology_dim(eye, SparseMatrix(0, 3)) == 0


def test_exact_sequence():
    # 0 -> Q -> Q^2 -> Q -> 0 with im = ker in the middle
    d_in = SparseMatrix.from_dense([[1], [1]])
    d_out = SparseMatrix.from_dense([[1, -1]])
    assert cohomology_dim(d_in, d_out) == 0


def test_not_a_complex():
    d_in = SparseMatrix.from_dense([[1], [0]])
    d_out = SparseMatrix.from_dense([[1, 0]])
    with pytest.raises(NotAComplex):
        cohomology_dim(d_in, d_out)


small_ints = st.integers(min_value=-3, max_value=3)


@st.composite
def matrices(draw):
    rows = draw(st.integers(0, 6))
    cols = draw(st.integers(0, 6))
    return [[draw(small_ints) for _ in range(cols)] for _ in range(rows)], cols


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_nullity_and_kernel(data):
    dense, cols = data
    M = SparseMatrix(len(dense), cols)
    for i, row in enumerate(dense):
        for j, v in enumerate(row):
            M[i, j] = v
    r, ker = rref(M)
    assert r + len(ker) == cols
    for v in ker:
        assert all(x == 0 for x in M.apply(dict(enumerate(v))).values())
    # float cross-check on small integer matrices
    if dense and cols:
        assert r == np.linalg.matrix_rank(np.array(dense, dtype=float))
    assert rref(M) == (r, ker)


def test_fractions_stay_exact():
    M = SparseMatrix.from_dense([[Fraction(1, 3), Fraction(2, 7)], [Fraction(2, 3), Fraction(4, 7)]])
    r, ker = rref(M)
    assert r == 1
    assert ker[0] == [Fraction(-6, 7), Fraction(1)]
    assert rank(M) == 1
