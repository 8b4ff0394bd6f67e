"""Dense exact linear algebra over the prime field GF(p).

Matrices are plain ``numpy`` int64 arrays holding residues in ``[0, p)``.
Every routine takes the modulus explicitly and returns fresh arrays.
Since ``p < 2**16`` products of two residues fit comfortably in int64.
"""
from __future__ import annotations

import numpy as np

DEFAULT_PRIME = 101

Mat = np.ndarray


class InconsistentSystem(ValueError):
    """Raised by :func:`solve` when ``A X = B`` has no solution."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def check_prime(p: int) -> int:
    if not (2 <= p < 2**16) or not is_prime(p):
        raise ValueError(f"field modulus must be a prime below 2**16, got {p}")
    return p


def as_mat(M, p: int, shape: tuple[int, int] | None = None) -> Mat:
    A = np.array(M, dtype=np.int64)
    if shape is not None:
        A = A.reshape(shape)
    if A.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {A.shape}")
    return A % p


def zeros(rows: int, cols: int) -> Mat:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> Mat:
    return np.eye(n, dtype=np.int64)


def matmul(A: Mat, B: Mat, p: int) -> Mat:
    if A.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    return (A @ B) % p


def rref(M: Mat, p: int) -> tuple[Mat, list[int], int]:
    """Reduced row echelon form.

    Returns ``(R, pivots, rank)`` where ``pivots`` lists the pivot columns
    in increasing order.
    """
    A = np.array(M, dtype=np.int64) % p
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = (A[r] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit] = (A[hit] - np.outer(col[hit], A[r])) % p
        pivots.append(c)
        r += 1
    return A, pivots, r


def rank(M: Mat, p: int) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    # eliminate along the short side
    if M.shape[0] > M.shape[1]:
        M = M.T
    return rref(M, p)[2]


def kernel_basis(A: Mat, p: int) -> Mat:
    """Columns spanning the right null space ``{x : A x = 0}``."""
    A = np.asarray(A, dtype=np.int64)
    cols = A.shape[1]
    if A.shape[0] == 0:
        return identity(cols)
    R, pivots, r = rref(A, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    K = zeros(cols, len(free))
    for j, f in enumerate(free):
        K[f, j] = 1
        for i, pc in enumerate(pivots):
            K[pc, j] = (-R[i, f]) % p
    return K


def column_space(A: Mat, p: int) -> Mat:
    """A basis (as columns) of the column space, chosen among the columns of ``A``."""
    A = np.asarray(A, dtype=np.int64)
    if A.shape[1] == 0:
        return zeros(A.shape[0], 0)
    _, pivots, _ = rref(A, p)
    return A[:, pivots] % p


def solve(A: Mat, B: Mat, p: int) -> tuple[Mat, Mat]:
    """Solve ``A X = B``.

    Returns a particular solution ``X`` and a matrix whose columns span the
    null space of ``A``.  Raises :class:`InconsistentSystem` when there is
    no solution.
    """
    A = np.asarray(A, dtype=np.int64) % p
    B = np.asarray(B, dtype=np.int64) % p
    if B.ndim == 1:
        B = B.reshape(-1, 1)
    if A.shape[0] != B.shape[0]:
        raise ValueError("A and B must have the same number of rows")
    n = A.shape[1]
    aug = np.hstack([A, B])
    R, pivots, r = rref(aug, p)
    if any(pc >= n for pc in pivots):
        raise InconsistentSystem("linear system has no solution")
    X = zeros(n, B.shape[1])
    for i, pc in enumerate(pivots):
        X[pc] = R[i, n:]
    return X, kernel_basis(A, p)


def inverse(A: Mat, p: int) -> Mat:
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    X, N = solve(A, identity(n), p)
    if N.shape[1]:
        raise InconsistentSystem("matrix is singular")
    return X


def extend_basis(S: Mat, T: Mat, p: int) -> list[int]:
    """Indices of columns of ``T`` that complete ``colspan(S)`` to ``colspan([S|T])``."""
    k = S.shape[1]
    _, pivots, _ = rref(np.hstack([S, T]), p)
    return [c - k for c in pivots if c >= k]


def left_inverse(S: Mat, p: int) -> Mat:
    """A matrix ``L`` with ``L S = I`` for ``S`` of full column rank."""
    n, k = S.shape
    if k == 0:
        return zeros(0, n)
    _, rows, r = rref(S.T, p)
    if r != k:
        raise ValueError("matrix does not have full column rank")
    L = zeros(k, n)
    L[:, rows] = inverse(S[rows, :], p)
    return L


def charpoly(A: Mat, p: int) -> list[int]:
    """Characteristic polynomial ``det(xI - A)``, coefficients from x^n down to x^0.

    Reduction to upper Hessenberg form followed by the usual recurrence.
    """
    H = np.array(A, dtype=np.int64) % p
    n = H.shape[0]
    for m in range(1, n - 1):
        nz = np.flatnonzero(H[m:, m - 1])
        if nz.size == 0:
            continue
        i = m + int(nz[0])
        if i != m:
            H[[m, i]] = H[[i, m]]
            H[:, [m, i]] = H[:, [i, m]]
        inv = pow(int(H[m, m - 1]), -1, p)
        for j in range(m + 1, n):
            u = (int(H[j, m - 1]) * inv) % p
            if u:
                H[j] = (H[j] - u * H[m]) % p
                H[:, m] = (H[:, m] + u * H[:, j]) % p
    # polys[k] = charpoly of the leading k x k block, low degree first
    polys: list[list[int]] = [[1]]
    for k in range(1, n + 1):
        a = int(H[k - 1, k - 1])
        prev = polys[k - 1]
        cur = [0] + prev
        for d, c in enumerate(prev):
            cur[d] = (cur[d] - a * c) % p
        prod = 1
        for i in range(1, k):
            prod = (prod * int(H[k - i, k - i - 1])) % p
            t = (prod * int(H[k - i - 1, k - 1])) % p
            if t:
                for d, c in enumerate(polys[k - i - 1]):
                    cur[d] = (cur[d] - t * c) % p
        polys.append(cur)
    return polys[n][::-1]


def roots(coeffs: list[int], p: int) -> list[int]:
    """All roots in GF(p) of a polynomial given high degree first."""
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in coeffs:
        acc = (acc * xs + c) % p
    return [int(x) for x in np.flatnonzero(acc == 0)]


def matpow(A: Mat, e: int, p: int) -> Mat:
    R = identity(A.shape[0])
    B = A % p
    while e:
        if e & 1:
            R = matmul(R, B, p)
        B = matmul(B, B, p)
        e >>= 1
    return R
