import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from multisegal.smith import (
    SparseIntMatrix,
    check_decomposition,
    determinant,
    divisibility_chain,
    smith_decomposition,
    smith_normal_form,
)


def matrices(max_side=5, max_entry=6):
    return st.integers(0, max_side).flatmap(lambda m: st.integers(0, max_side).flatmap(
        lambda n: st.lists(st.lists(st.integers(-max_entry, max_entry), min_size=n, max_size=n),
                           min_size=m, max_size=m).map(lambda rows: (rows, n))))


def determinantal_divisors(rows, ncols):
    """Invariant factors from gcds of k x k minors: d_k = D_k / D_{k-1}."""
    m = len(rows)
    factors, prev = [], 1
    for k in range(1, min(m, ncols) + 1):
        g = 0
        for r in itertools.combinations(range(m), k):
            for c in itertools.combinations(range(ncols), k):
                g = math.gcd(g, determinant([[rows[i][j] for j in c] for i in r]))
        if g == 0:
            break
        factors.append(g // prev)
        prev = g
    return tuple(factors)


def sympy_factors(rows, ncols):
    if not rows or not ncols:
        return ()
    D = sympy_snf(Matrix(rows), domain=ZZ)
    return tuple(abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] != 0)


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_matches_sympy(case):
    rows, n = case
    assert smith_normal_form(SparseIntMatrix.from_dense(rows, n)).invariant_factors == sympy_factors(rows, n)


@settings(max_examples=80, deadline=None)
@given(matrices(max_side=4, max_entry=12))
def test_matches_determinantal_divisors(case):
    rows, n = case
    assert smith_normal_form(SparseIntMatrix.from_dense(rows, n)).invariant_factors == determinantal_divisors(rows, n)


@settings(max_examples=80, deadline=None)
@given(matrices(max_side=4))
def test_dense_transforms(case):
    rows, n = case
    S, D, T = smith_decomposition(rows, ncols=n)
    check_decomposition(rows, S, D, T)
    smith_normal_form(SparseIntMatrix.from_dense(rows, n), verify=True)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(
    st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant_matches_sympy(rows):
    assert determinant(rows) == Matrix(rows).det()


@pytest.mark.parametrize("rows,expected", [
    ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], (2, 6, 12)),
    ([[2, 0], [0, 3]], (1, 6)),
    ([[4, 0], [0, 6]], (2, 12)),
    ([[0, 0], [0, 0]], ()),
    ([[1, 1], [1, -1]], (1, 2)),
])
def test_known_forms(rows, expected):
    assert smith_normal_form(rows).invariant_factors == expected


def test_inputs_accepted():
    A = [[2, 0], [0, 4]]
    assert smith_normal_form(np.array(A)).invariant_factors == (2, 4)
    assert smith_normal_form(SparseIntMatrix(3, 0)).rank == 0
    assert smith_normal_form(np.zeros((0, 4), dtype=int)).rank == 0
    result = smith_normal_form([[0, 2], [2, 0], [0, 0]])
    assert result.rank == 2 and result.torsion == (2, 2)


def test_divisibility_chain():
    assert divisibility_chain([6, 4, 1, -1]) == (1, 1, 2, 12)
    assert divisibility_chain([2, 3]) == (1, 6)
    with pytest.raises(ValueError):
        divisibility_chain([0])


def test_sparse_matrix_ops():
    A = SparseIntMatrix.from_dense([[1, 0, 2], [0, 3, 0]])
    B = SparseIntMatrix.from_dense([[1], [1], [1]])
    assert A.matmul(B).to_dense() == [[3], [3]]
    assert A.nnz == 3
    P = A.permuted([1, 0], [2, 0, 1])
    assert P.to_dense() == [[3, 0, 0], [0, 2, 1]]
    with pytest.raises(ValueError):
        SparseIntMatrix(2, 1, [{5: 1}])


@settings(max_examples=50, deadline=None)
@given(matrices(), st.randoms(use_true_random=False))
def test_invariant_under_permutation(case, rnd):
    rows, n = case
    A = SparseIntMatrix.from_dense(rows, n)
    rp, cp = list(range(A.nrows)), list(range(A.ncols))
    rnd.shuffle(rp)
    rnd.shuffle(cp)
    assert smith_normal_form(A.permuted(rp, cp)) == smith_normal_form(A)


def test_large_sparse_boundary_like_matrix():
    # a path graph's incidence matrix has rank n-1 and no torsion
    n = 400
    cols = [{i: -1, i + 1: 1} for i in range(n - 1)]
    result = smith_normal_form(SparseIntMatrix(n, n - 1, cols))
    assert result.rank == n - 1 and result.torsion == ()
