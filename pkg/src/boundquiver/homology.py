"""Minimal projective resolutions, homological dimensions and Ext.

Ext is computed from minimal resolutions only.  A cochain in
``Hom(P, N)`` for ``P = P(v_1) + ... + P(v_r)`` is stored as the
concatenation of the images of the generators ``e_{v_j}``, each a vector
in ``e_{v_j} N``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .algebra import BasicAlgebra
from .modules import (Module, Morphism, direct_sum, dual_module, graded_basis,
                      is_isomorphic, projective, simple, submodule, quotient)

DEFAULT_CAP = 64
INFINITE = math.inf


class ResolutionCapExceeded(RuntimeError):
    pass


@dataclass
class ProjectiveSum:
    """A direct sum of indecomposable projectives, one per entry of ``vertices``."""

    algebra: BasicAlgebra
    vertices: list[int]
    module: Module = field(init=False)
    gens: list[int] = field(init=False)
    offsets: list[int] = field(init=False)

    def __post_init__(self):
        alg = self.algebra
        parts = [projective(alg, v) for v in self.vertices]
        if parts:
            self.module = direct_sum(parts)[0]
        else:
            self.module = Module(alg, np.zeros((alg.dim, 0, 0), dtype=np.int64), [])
        self.offsets, self.gens = [], []
        off = 0
        for v in self.vertices:
            basis = alg.basis_from(v)
            self.offsets.append(off)
            self.gens.append(off + basis.index(alg.idempotents[v]))
            off += len(basis)

    @property
    def dim(self) -> int:
        return self.module.dim

    def summand_basis(self, j: int) -> list[int]:
        return self.algebra.basis_from(self.vertices[j])

    def extend(self, target: Module, images: np.ndarray) -> np.ndarray:
        """The hom ``self -> target`` sending generator j to ``images[:, j]``."""
        p = self.algebra.p
        cols = []
        for j, v in enumerate(self.vertices):
            basis = self.summand_basis(j)
            cols.append((target.actions[basis] @ images[:, j]) % p)
        if not cols:
            return la.zeros(target.dim, 0)
        return np.concatenate([c.T for c in cols], axis=1)

    def cochain_index(self, N: Module) -> list[np.ndarray]:
        """Positions of each generator's block inside the cochain vector."""
        out, off = [], 0
        for v in self.vertices:
            k = len(N.blocks[v])
            out.append(np.arange(off, off + k))
            off += k
        return out

    def cochain_dim(self, N: Module) -> int:
        return sum(len(N.blocks[v]) for v in self.vertices)

    def evaluate(self, N: Module, z: np.ndarray) -> np.ndarray:
        """The hom ``self -> N`` represented by the cochain ``z``."""
        images = la.zeros(N.dim, len(self.vertices))
        for j, (v, idx) in enumerate(zip(self.vertices, self.cochain_index(N))):
            images[N.blocks[v], j] = z[idx]
        return self.extend(N, images)


def pullback(P: ProjectiveSum, Q: ProjectiveSum, h: np.ndarray, N: Module) -> np.ndarray:
    """Matrix of ``Hom(P, N) -> Hom(Q, N)``, ``phi -> phi o h``, on cochains."""
    p = P.algebra.p
    out = la.zeros(Q.cochain_dim(N), P.cochain_dim(N))
    rows = Q.cochain_index(N)
    cols = P.cochain_index(N)
    gq = np.asarray(Q.gens, dtype=np.int64)
    for j, v in enumerate(P.vertices):
        if cols[j].size == 0:
            continue
        basis = P.summand_basis(j)
        H = h[P.offsets[j]:P.offsets[j] + len(basis)][:, gq]
        if not H.any():
            continue
        T = np.einsum("bl,bxy->lxy", H, N.actions[basis]) % p
        for l, w in enumerate(Q.vertices):
            if rows[l].size == 0:
                continue
            out[np.ix_(rows[l], cols[j])] = T[l][np.ix_(N.blocks[w], N.blocks[v])]
    return out


def projective_cover(M: Module) -> tuple[ProjectiveSum, np.ndarray]:
    """Projective cover ``P -> M`` as (projective sum, matrix dim M x dim P)."""
    gens = M.top_generators
    P = ProjectiveSum(M.algebra, [v for v, _ in gens])
    images = la.zeros(M.dim, len(gens))
    for j, (_, idx) in enumerate(gens):
        images[idx, j] = 1
    return P, P.extend(M, images)


def lift_through(X: Module, s: np.ndarray, T: np.ndarray, Q: ProjectiveSum) -> np.ndarray:
    """A hom ``h: Q -> X`` with ``s h = T``.

    ``s`` is a hom out of ``X`` and ``T`` a hom out of ``Q`` whose image
    lies in the image of ``s``.
    """
    p = X.p
    if Q.dim == 0:
        return la.zeros(X.dim, 0)
    X_gens, _ = la.solve(s, T[:, Q.gens] % p, p)
    for l, w in enumerate(Q.vertices):
        X_gens[X.grading != w, l] = 0
    return Q.extend(X, X_gens)


class Resolution:
    """Minimal projective resolution, computed lazily."""

    def __init__(self, module: Module, cap: int = DEFAULT_CAP):
        self.module = module
        self.cap = cap
        P0, eps = projective_cover(module)
        self.terms: list[ProjectiveSum] = [P0]
        self.aug = eps
        self.diffs: list[np.ndarray | None] = [None]
        self.syzygies: list[Module] = [module]
        self._last_cover = eps
        self.status: tuple[str, int] | None = None

    def _step(self) -> bool:
        """Add one term; returns False once the resolution has ended."""
        if self.status is not None:
            return False
        k = len(self.terms) - 1
        P = self.terms[k]
        p = self.module.p
        K_basis = graded_basis(P.module, la.kernel_basis(self._last_cover, p))
        if K_basis.shape[1] == 0:
            self.status = ("finite", k)
            return False
        if k + 1 > self.cap:
            self.status = ("truncated", self.cap)
            raise ResolutionCapExceeded(f"resolution longer than {self.cap} steps")
        K, inc = submodule(P.module, K_basis)
        for j, old in enumerate(self.syzygies):
            if old.dimvec == K.dimvec and is_isomorphic(old, K):
                self.syzygies.append(K)
                self.status = ("periodic", k + 1)
                return False
        self.syzygies.append(K)
        Pn, eps = projective_cover(K)
        self.terms.append(Pn)
        self.diffs.append(la.matmul(inc, eps, p))
        self._last_cover = eps
        return True

    def ensure(self, length: int) -> None:
        """Make sure terms ``P_0 .. P_length`` exist (or the resolution ended)."""
        while len(self.terms) <= length and self._step():
            pass

    def complete(self) -> "Resolution":
        while self._step():
            pass
        return self

    def term(self, i: int) -> ProjectiveSum:
        self.ensure(i)
        if i < len(self.terms):
            return self.terms[i]
        if self.status and self.status[0] == "periodic":
            raise ResolutionCapExceeded("terms past the detected period are not materialized")
        return ProjectiveSum(self.module.algebra, [])

    def diff(self, i: int) -> np.ndarray:
        """``d_i : P_i -> P_{i-1}`` (i >= 1)."""
        Pi, Pj = self.term(i), self.term(i - 1)
        if i < len(self.diffs):
            return self.diffs[i]
        return la.zeros(Pj.dim, Pi.dim)

    @property
    def length(self):
        self.complete()
        kind, k = self.status
        return k if kind == "finite" else INFINITE

    def multiplicities(self, i: int) -> tuple[int, ...]:
        P = self.term(i)
        return tuple(P.vertices.count(v) for v in range(self.module.algebra.rank))


def resolution(M: Module, cap: int = DEFAULT_CAP) -> Resolution:
    res = M.__dict__.get("_resolution")
    if res is None:
        res = Resolution(M, cap)
        M.__dict__["_resolution"] = res
    return res


def proj_dim(M: Module):
    if M.dim == 0:
        return -1
    return resolution(M).length


def inj_dim(M: Module):
    if M.dim == 0:
        return -1
    key = "_injdim"
    if key not in M.__dict__:
        M.__dict__[key] = proj_dim(dual_module(M))
    return M.__dict__[key]


def global_dimension(alg: BasicAlgebra):
    if "gldim" not in alg.cache:
        alg.cache["gldim"] = max(proj_dim(simple(alg, v)) for v in range(alg.rank))
    return alg.cache["gldim"]


# --------------------------------------------------------------------- Ext

class ExtSpace:
    """``Ext^i(M, N)`` as cocycles modulo coboundaries on ``Hom(P_i, N)``."""

    def __init__(self, res: Resolution, i: int, N: Module):
        self.res, self.i, self.N = res, i, N
        p = N.p
        P = res.term(i)
        n_i = P.cochain_dim(N)
        if n_i == 0:
            self.reps = la.zeros(0, 0)
            self._basis = la.zeros(0, 0)
            self.dim = 0
            return
        delta = pullback(P, res.term(i + 1), res.diff(i + 1), N) if res.term(i + 1).dim else la.zeros(0, n_i)
        Z = la.kernel_basis(delta, p)
        if i > 0 and res.term(i - 1).dim:
            B = la.column_space(pullback(res.term(i - 1), P, res.diff(i), N), p)
        else:
            B = la.zeros(n_i, 0)
        keep = la.extend_basis(B, Z, p)
        self.reps = Z[:, keep]
        self._basis = np.hstack([B, self.reps])
        self._nb = B.shape[1]
        self.dim = len(keep)

    def coords(self, z: np.ndarray) -> np.ndarray:
        """Coordinates of the class of the cocycle(s) ``z``."""
        if self.dim == 0:
            return la.zeros(0, z.shape[1] if z.ndim == 2 else 1)
        X, _ = la.solve(self._basis, z.reshape(self._basis.shape[0], -1), self.N.p)
        return X[self._nb:]


def ext_space(i: int, M: Module, N: Module) -> ExtSpace:
    if i < 0:
        raise ValueError("negative Ext degree")
    return ExtSpace(resolution(M), i, N)


def ext_dim(i: int, M: Module, N: Module) -> int:
    if M.dim == 0 or N.dim == 0:
        return 0
    return ext_space(i, M, N).dim


def lift_chain(source: list[ProjectiveSum], source_diffs: list[np.ndarray],
               target: Resolution, w: np.ndarray, upto: int) -> list[np.ndarray]:
    """Chain map from a complex of projectives into ``target`` over ``w``.

    ``source[k]`` with ``source_diffs[k] : source[k] -> source[k-1]`` and
    ``w : source[0] -> target.module`` with ``w o source_diffs[1] = 0``.
    Returns ``h_0 .. h_upto`` with ``eps h_0 = w`` and
    ``d_k h_k = h_{k-1} source_diffs[k]``.
    """
    p = target.module.p
    hs = []
    for k in range(upto + 1):
        Q = source[k]
        P = target.term(k)
        if k == 0:
            h = lift_through(P.module, target.aug, w, Q)
        else:
            rhs = la.matmul(hs[-1], source_diffs[k], p)
            if P.dim == 0:
                h = la.zeros(0, Q.dim)
            else:
                h = lift_through(P.module, target.diff(k), rhs, Q)
        hs.append(h)
    return hs


def _res_complex(res: Resolution, start: int, upto: int):
    terms = [res.term(start + k) for k in range(upto + 1)]
    diffs = [None] + [res.diff(start + k) for k in range(1, upto + 1)]
    return terms, diffs


def induced_ext_map(g: Morphism, i: int, N: Module) -> np.ndarray:
    """Matrix of ``Ext^i(M, N) -> Ext^i(M', N)`` induced by ``g : M' -> M``."""
    p = N.p
    src_res, tgt_res = resolution(g.source), resolution(g.target)
    E_tgt, E_src = ext_space(i, g.target, N), ext_space(i, g.source, N)
    if E_tgt.dim == 0 or E_src.dim == 0:
        return la.zeros(E_src.dim, E_tgt.dim)
    terms, diffs = _res_complex(src_res, 0, i + 1)
    w = la.matmul(g.matrix, src_res.aug, p)
    hs = lift_chain(terms, diffs, tgt_res, w, i)
    pulled = la.matmul(pullback(tgt_res.term(i), terms[i], hs[i], N), E_tgt.reps, p)
    return E_src.coords(pulled)


@dataclass
class ShortExactSequence:
    """``0 -> left --f--> middle --g--> right -> 0``."""

    f: Morphism
    g: Morphism

    @property
    def left(self) -> Module:
        return self.f.source

    @property
    def middle(self) -> Module:
        return self.f.target

    @property
    def right(self) -> Module:
        return self.g.target

    def check(self) -> None:
        p = self.f.source.p
        self.f.check()
        self.g.check()
        F, G = self.f.matrix, self.g.matrix
        if la.rank(F, p) != F.shape[1]:
            raise ValueError("f is not injective")
        if la.rank(G, p) != G.shape[0]:
            raise ValueError("g is not surjective")
        if la.matmul(G, F, p).any() or F.shape[1] + G.shape[0] != F.shape[0]:
            raise ValueError("sequence is not exact in the middle")


def connecting_map(ses: ShortExactSequence, i: int, Z: Module) -> np.ndarray:
    """Matrix of ``Ext^i(left, Z) -> Ext^{i+1}(right, Z)``."""
    p = Z.p
    A, B, C = ses.left, ses.middle, ses.right
    E_src, E_tgt = ext_space(i, A, Z), ext_space(i + 1, C, Z)
    if E_src.dim == 0 or E_tgt.dim == 0:
        return la.zeros(E_tgt.dim, E_src.dim)
    res_c, res_a = resolution(C), resolution(A)
    u = lift_through(B, ses.g.matrix, res_c.aug, res_c.term(0))
    ud = la.matmul(u, res_c.diff(1), p)
    w = la.matmul(la.left_inverse(ses.f.matrix, p), ud, p)
    terms, diffs = _res_complex(res_c, 1, i)
    hs = lift_chain(terms, diffs, res_a, w, i)
    pulled = la.matmul(pullback(res_a.term(i), terms[i], hs[i], Z), E_src.reps, p)
    return E_tgt.coords(pulled)


def extension_class(ses: ShortExactSequence) -> np.ndarray:
    """Coordinates in ``Ext^1(right, left)`` of the class of the sequence."""
    A = ses.left
    res_a = resolution(A)
    P0 = res_a.term(0)
    ident = la.zeros(P0.cochain_dim(A), 1)
    for j, (v, idx) in enumerate(zip(P0.vertices, P0.cochain_index(A))):
        ident[idx, 0] = res_a.aug[A.blocks[v], P0.gens[j]]
    E0 = ext_space(0, A, A)
    delta = connecting_map(ses, 0, A)
    return la.matmul(delta, E0.coords(ident), A.p)[:, 0]


def extension_from_cocycle(N: Module, M: Module, coefficients) -> ShortExactSequence:
    """The extension ``0 -> M -> E -> N -> 0`` with class ``sum c_k xi_k``.

    ``xi_k`` runs over the basis of ``Ext^1(N, M)`` fixed by :func:`ext_space`.
    """
    p = M.p
    E1 = ext_space(1, N, M)
    c = np.asarray(coefficients, dtype=np.int64).reshape(-1) % p
    if c.size != E1.dim:
        raise ValueError(f"expected {E1.dim} coefficients, got {c.size}")
    res = resolution(N)
    P0, P1 = res.term(0), res.term(1)
    z = la.matmul(E1.reps, c.reshape(-1, 1), p)[:, 0] if E1.dim else la.zeros(P1.cochain_dim(M), 1)[:, 0]
    phi = P1.evaluate(M, z) if P1.dim else la.zeros(M.dim, 0)
    # Omega N inside P0 and the cover P1 -> Omega N
    K_basis = graded_basis(P0.module, la.kernel_basis(res.aug, p))
    omega, inc = submodule(P0.module, K_basis)
    if omega.dim:
        pi1 = la.matmul(la.left_inverse(inc, p), res.diff(1), p)
        R, _ = la.solve(pi1, la.identity(omega.dim), p)
        psi = la.matmul(phi, R, p)
    else:
        psi = la.zeros(M.dim, 0)
    S, inj, _ = direct_sum([M, P0.module])
    U = (la.matmul(inj[0], psi, p) - la.matmul(inj[1], inc, p)) % p
    E, Q, C = quotient(S, U)
    f = la.matmul(Q, inj[0], p)
    g = la.matmul(la.matmul(res.aug, inj[1].T, p), C, p)
    ses = ShortExactSequence(Morphism(M, E, f), Morphism(E, N, g))
    return ses
