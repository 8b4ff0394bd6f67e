import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from boundquiver import linalg as la

P = 7


def test_rref_identity():
    R, piv, r = la.rref(np.eye(3, dtype=np.int64), P)
    assert r == 3 and piv == [0, 1, 2]
    assert (R == np.eye(3)).all()


def test_rref_zero():
    _, piv, r = la.rref(np.zeros((2, 2), dtype=np.int64), P)
    assert r == 0 and piv == []


def test_rank_dependent_rows():
    assert la.rank(np.array([[1, 2], [2, 4]]), P) == 1


def test_solve_identity():
    X, N = la.solve(np.eye(2, dtype=np.int64), np.eye(2, dtype=np.int64), P)
    assert (X == np.eye(2)).all()
    assert N.shape[1] == 0


def test_solve_zero_map():
    _, N = la.solve(np.zeros((2, 2), dtype=np.int64), np.zeros((2, 1), dtype=np.int64), P)
    assert N.shape[1] == 2


def test_solve_null_basis():
    _, N = la.solve(np.array([[1, 1]]), np.array([[0]]), P)
    assert N.shape[1] == 1
    v = N[:, 0] * pow(int(N[0, 0]), -1, P) % P
    assert list(v) == [1, 6]


def test_solve_inconsistent():
    with pytest.raises(la.InconsistentSystem):
        la.solve(np.array([[1, 1], [2, 2]]), np.array([[0], [1]]), P)


def test_kernel_basis():
    assert la.kernel_basis(np.eye(3, dtype=np.int64), P).shape[1] == 0
    assert la.kernel_basis(np.zeros((3, 3), dtype=np.int64), P).shape[1] == 3
    A = np.array([[1, 2], [2, 4]])
    K = la.kernel_basis(A, P)
    assert K.shape[1] == 1
    assert not (A @ K % P).any()
    assert not (A @ np.array([2, 6]) % P).any()


def test_inverse():
    A = np.array([[2, 1], [1, 1]])
    assert (la.matmul(A, la.inverse(A, P), P) == np.eye(2)).all()


def test_check_prime():
    with pytest.raises(ValueError):
        la.check_prime(9)
    assert la.check_prime(101) == 101


matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, P - 1), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_transpose(rows):
    A = np.array(rows, dtype=np.int64)
    assert la.rank(A, P) == la.rank(A.T, P)


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_nullity(rows):
    A = np.array(rows, dtype=np.int64)
    K = la.kernel_basis(A, P)
    assert la.rank(A, P) + K.shape[1] == A.shape[1]
    assert not (A @ K % P).any()


@settings(max_examples=60, deadline=None)
@given(matrices, st.data())
def test_solve_round_trip(rows, data):
    A = np.array(rows, dtype=np.int64)
    x = np.array(data.draw(st.lists(st.integers(0, P - 1), min_size=A.shape[1],
                                    max_size=A.shape[1])), dtype=np.int64).reshape(-1, 1)
    B = A @ x % P
    X, N = la.solve(A, B, P)
    assert (A @ X % P == B).all()
    assert N.shape[1] == A.shape[1] - la.rank(A, P)
