"""Finite-dimensional left modules over a :class:`BasicAlgebra`.

A module stores one action matrix per algebra basis element together with
a grading: ``grading[i]`` is the vertex whose idempotent fixes the i-th
basis vector.  Every subspace handed around here is graded, so morphisms
are block diagonal with one block per vertex.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg as la
from .algebra import BasicAlgebra
from .dsl import ModuleSpec

DEFAULT_SEED = 0xA1
DEFAULT_ROUNDS = 64


class DecompositionInconclusive(RuntimeError):
    pass


class FieldTooSmall(ValueError):
    pass


class Module:
    def __init__(self, algebra: BasicAlgebra, actions, grading, name: str | None = None):
        self.algebra = algebra
        self.grading = np.asarray(grading, dtype=np.int64).reshape(-1)
        n = len(self.grading)
        self.actions = np.asarray(actions, dtype=np.int64).reshape(algebra.dim, n, n) % algebra.p
        self.name = name

    def __repr__(self) -> str:
        label = f"{self.name} " if self.name else ""
        return f"<Module {label}{self.dimvec_str()} over {self.algebra.name}>"

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def dim(self) -> int:
        return len(self.grading)

    @cached_property
    def dimvec(self) -> tuple[int, ...]:
        counts = np.bincount(self.grading, minlength=self.algebra.rank)
        return tuple(int(c) for c in counts)

    def dimvec_str(self) -> str:
        return "(" + ",".join(str(c) for c in self.dimvec) + ")"

    @cached_property
    def blocks(self) -> list[np.ndarray]:
        """Basis indices of each vertex component."""
        return [np.flatnonzero(self.grading == v) for v in range(self.algebra.rank)]

    def act(self, i: int) -> np.ndarray:
        return self.actions[i]

    def is_zero(self) -> bool:
        return self.dim == 0

    def support(self) -> list[int]:
        return [v for v, c in enumerate(self.dimvec) if c]

    def check(self) -> None:
        """Raise unless the action respects the structure constants and grading."""
        A, p = self.algebra, self.p
        n = self.dim
        for v, e in enumerate(A.idempotents):
            expected = np.diag((self.grading == v).astype(np.int64))
            if not np.array_equal(self.actions[e], expected):
                raise ValueError("idempotent action does not match the grading")
        for i in range(A.dim):
            lhs = np.einsum("ab,jbc->jac", self.actions[i], self.actions) % p
            rhs = np.einsum("jk,kac->jac", A.mult[i], self.actions) % p
            if not np.array_equal(lhs, rhs):
                raise ValueError(f"action of {A.labels[i]} violates the structure constants")
        if n:
            src_ok = self.actions * (self.grading[None, None, :] == A.src[:, None, None])
            tgt_ok = src_ok * (self.grading[None, :, None] == A.tgt[:, None, None])
            if not np.array_equal(tgt_ok, self.actions):
                raise ValueError("action is not compatible with the grading")

    @cached_property
    def radical_basis(self) -> np.ndarray:
        """Graded basis (columns) of ``rad(A) M``."""
        rad = self.algebra.radical
        if not rad or self.dim == 0:
            return la.zeros(self.dim, 0)
        span = np.concatenate([self.actions[i] for i in rad], axis=1)
        return graded_basis(self, span)

    @cached_property
    def top_generators(self) -> list[tuple[int, int]]:
        """(vertex, basis index) of standard vectors spanning a complement of ``rad M``."""
        R = self.radical_basis
        out = []
        for v, idx in enumerate(self.blocks):
            if idx.size == 0:
                continue
            Rv = R[:, self.grading[np.argmax(R != 0, axis=0)] == v] if R.shape[1] else R
            E = np.eye(self.dim, dtype=np.int64)[:, idx]
            for j in la.extend_basis(Rv, E, self.p):
                out.append((v, int(idx[j])))
        return out

    @property
    def top_dimvec(self) -> tuple[int, ...]:
        c = Counter(v for v, _ in self.top_generators)
        return tuple(c.get(v, 0) for v in range(self.algebra.rank))

    @property
    def length(self) -> int:
        """Composition length (equals the dimension for split basic algebras)."""
        return self.dim

    def renamed(self, name: str) -> "Module":
        out = Module(self.algebra, self.actions, self.grading, name)
        return out


@dataclass
class Morphism:
    """A module homomorphism ``source -> target`` stored as a full matrix."""

    source: Module
    target: Module
    matrix: np.ndarray

    @property
    def blocks(self) -> list[np.ndarray]:
        return [self.matrix[np.ix_(self.target.blocks[v], self.source.blocks[v])]
                for v in range(self.source.algebra.rank)]

    def is_zero(self) -> bool:
        return not np.any(self.matrix % self.source.p)

    def compose(self, other: "Morphism") -> "Morphism":
        """``self o other``."""
        return Morphism(other.source, self.target, la.matmul(self.matrix, other.matrix, self.source.p))

    def check(self) -> None:
        p = self.source.p
        lhs = np.einsum("ab,jbc->jac", self.matrix, self.source.actions) % p
        rhs = np.einsum("jab,bc->jac", self.target.actions, self.matrix) % p
        if not np.array_equal(lhs, rhs):
            raise ValueError("matrix does not intertwine the actions")


def graded_basis(M: Module, span: np.ndarray) -> np.ndarray:
    """Graded basis of the subspace spanned by the columns of ``span``.

    Assumes that subspace is stable under the idempotents.
    """
    p = M.p
    cols = []
    for idx in M.blocks:
        if idx.size == 0 or span.shape[1] == 0:
            continue
        part = span[idx]
        basis = la.column_space(part, p)
        if basis.shape[1]:
            full = la.zeros(M.dim, basis.shape[1])
            full[idx] = basis
            cols.append(full)
    if not cols:
        return la.zeros(M.dim, 0)
    return np.concatenate(cols, axis=1)


def _grading_of_columns(M: Module, S: np.ndarray) -> np.ndarray:
    if S.shape[1] == 0:
        return np.zeros(0, dtype=np.int64)
    return M.grading[np.argmax(S != 0, axis=0)]


def submodule(M: Module, S: np.ndarray) -> tuple[Module, np.ndarray]:
    """Submodule with graded basis ``S`` (columns); returns it with the inclusion matrix."""
    p = M.p
    L = la.left_inverse(S, p)
    tmp = np.matmul(M.actions, S) % p
    acts = np.matmul(L, tmp) % p
    return Module(M.algebra, acts, _grading_of_columns(M, S)), S % p


def quotient(M: Module, S: np.ndarray) -> tuple[Module, np.ndarray, np.ndarray]:
    """Quotient ``M / span(S)``.

    Returns the quotient, the projection ``Q`` and a graded section ``C``
    (``Q C = I``, ``Q S = 0``).
    """
    p = M.p
    comp = []
    for idx in M.blocks:
        if idx.size == 0:
            continue
        Sv = S[:, _grading_of_columns(M, S) == M.grading[idx[0]]]
        E = np.eye(M.dim, dtype=np.int64)[:, idx]
        comp += [int(idx[j]) for j in la.extend_basis(Sv, E, p)]
    C = np.eye(M.dim, dtype=np.int64)[:, comp]
    Q = la.inverse(np.hstack([S, C]) % p, p)[S.shape[1]:]
    acts = np.matmul(Q, np.matmul(M.actions, C) % p) % p
    return Module(M.algebra, acts, M.grading[comp]), Q, C


def zero_module(alg: BasicAlgebra) -> Module:
    return Module(alg, np.zeros((alg.dim, 0, 0), dtype=np.int64), [])


def simple(alg: BasicAlgebra, v: int) -> Module:
    acts = np.zeros((alg.dim, 1, 1), dtype=np.int64)
    acts[alg.idempotents[v], 0, 0] = 1
    return Module(alg, acts, [v], name=f"S{alg.vertices[v]}")


def projective(alg: BasicAlgebra, v: int) -> Module:
    """``A e_v``, basis = algebra basis elements starting at ``v``."""
    key = ("P", v)
    if key not in alg.cache:
        basis = alg.basis_from(v)
        acts = alg.mult[:, basis][:, :, basis].transpose(0, 2, 1)
        alg.cache[key] = Module(alg, acts, alg.tgt[basis], name=f"P{alg.vertices[v]}")
    return alg.cache[key]


def injective(alg: BasicAlgebra, v: int) -> Module:
    key = ("I", v)
    if key not in alg.cache:
        alg.cache[key] = dual_module(projective(alg.opposite(), v)).renamed(f"I{alg.vertices[v]}")
    return alg.cache[key]


def standard_module(alg: BasicAlgebra, kind: str, vertex) -> Module:
    v = vertex if isinstance(vertex, (int, np.integer)) else alg.vertex_index(vertex)
    if kind == "simple":
        return simple(alg, v)
    if kind == "projective":
        return projective(alg, v)
    if kind == "injective":
        return injective(alg, v)
    raise ValueError(f"unknown kind {kind!r}")


def dual_module(M: Module) -> Module:
    """``D M = Hom_k(M, k)`` as a module over the opposite algebra."""
    name = None
    if M.name:
        name = M.name[2:-1] if M.name.startswith("D(") else f"D({M.name})"
    return Module(M.algebra.opposite(), M.actions.transpose(0, 2, 1), M.grading, name)


def from_spec(alg: BasicAlgebra, mspec: ModuleSpec) -> Module:
    """Build a module over a quiver algebra from per-arrow matrices."""
    if alg.spec is None or alg.paths is None:
        raise ValueError("module literals need an algebra built from a quiver")
    p = alg.p
    dims = [mspec.dims.get(v, 0) for v in alg.vertices]
    offs = np.concatenate([[0], np.cumsum(dims)])
    n = int(offs[-1])
    grading = np.repeat(np.arange(alg.rank), dims)
    arrow_mats = {}
    for a in alg.spec.arrows:
        s, t = alg.vertex_index(a.source), alg.vertex_index(a.target)
        full = la.zeros(n, n)
        if dims[s] and dims[t]:
            rows = mspec.maps.get(a.name)
            if rows is not None:
                full[offs[t]:offs[t + 1], offs[s]:offs[s + 1]] = la.as_mat(rows, p, (dims[t], dims[s]))
        arrow_mats[a.name] = full
    acts = np.zeros((alg.dim, n, n), dtype=np.int64)
    for i, word in enumerate(alg.paths):
        if not word:
            acts[i] = np.diag((grading == alg.src[i]).astype(np.int64))
            continue
        m = la.identity(n)
        for a in word:
            m = la.matmul(arrow_mats[a], m, p)
        acts[i] = m
    M = Module(alg, acts, grading, name=mspec.name)
    # relations hold iff the path actions respect the structure constants
    M.check()
    return M


def to_spec(M: Module, name: str | None = None) -> ModuleSpec:
    alg = M.algebra
    if alg.spec is None or alg.paths is None:
        raise ValueError("module serialization needs a quiver algebra")
    spec = ModuleSpec(name or M.name or "M", {v: M.dimvec[i] for i, v in enumerate(alg.vertices)})
    for a in alg.spec.arrows:
        i = alg.paths.index((a.name,))
        s, t = alg.vertex_index(a.source), alg.vertex_index(a.target)
        blk = M.actions[i][np.ix_(M.blocks[t], M.blocks[s])]
        if blk.size:
            spec.maps[a.name] = blk.tolist()
    return spec


def direct_sum(modules: list[Module]) -> tuple[Module, list[np.ndarray], list[np.ndarray]]:
    """Direct sum with the summand injections and projections."""
    if not modules:
        raise ValueError("direct_sum of an empty list")
    alg = modules[0].algebra
    if any(m.algebra is not alg for m in modules):
        raise ValueError("direct sum of modules over different algebras")
    n = sum(m.dim for m in modules)
    acts = np.zeros((alg.dim, n, n), dtype=np.int64)
    injections, projections = [], []
    off = 0
    for m in modules:
        acts[:, off:off + m.dim, off:off + m.dim] = m.actions
        inc = la.zeros(n, m.dim)
        inc[off:off + m.dim] = la.identity(m.dim)
        injections.append(inc)
        projections.append(inc.T.copy())
        off += m.dim
    grading = np.concatenate([m.grading for m in modules]) if n else []
    return Module(alg, acts, grading), injections, projections


# ---------------------------------------------------------------- Hom spaces

def _hom_system(M: Module, N: Module):
    A = M.algebra
    if N.algebra is not A:
        raise ValueError("Hom between modules over different algebras")
    offs = [0]
    for v in range(A.rank):
        offs.append(offs[-1] + len(N.blocks[v]) * len(M.blocks[v]))
    rows = []
    for g in A.generators:
        s, t = int(A.src[g]), int(A.tgt[g])
        ms, mt, ns, nt = len(M.blocks[s]), len(M.blocks[t]), len(N.blocks[s]), len(N.blocks[t])
        if nt * ms == 0:
            continue
        Nx = N.actions[g][np.ix_(N.blocks[t], N.blocks[s])]
        Mx = M.actions[g][np.ix_(M.blocks[t], M.blocks[s])]
        blk = np.zeros((nt * ms, offs[-1]), dtype=np.int64)
        if ns:
            blk[:, offs[s]:offs[s + 1]] += np.kron(Nx, np.eye(ms, dtype=np.int64))
        if mt:
            blk[:, offs[t]:offs[t + 1]] -= np.kron(np.eye(nt, dtype=np.int64), Mx.T)
        rows.append(blk % A.p)
    system = np.concatenate(rows, axis=0) if rows else np.zeros((0, offs[-1]), dtype=np.int64)
    return system, offs


def hom_matrices(M: Module, N: Module) -> np.ndarray:
    """Basis of ``Hom_A(M, N)`` as an array of shape ``(k, dim N, dim M)``."""
    system, offs = _hom_system(M, N)
    K = la.kernel_basis(system, M.p)
    k = K.shape[1]
    out = np.zeros((k, N.dim, M.dim), dtype=np.int64)
    for v in range(M.algebra.rank):
        nb, mb = N.blocks[v], M.blocks[v]
        if nb.size * mb.size == 0:
            continue
        part = K[offs[v]:offs[v + 1]].T.reshape(k, len(nb), len(mb))
        out[:, nb[:, None], mb[None, :]] = part
    return out


def hom_dim(M: Module, N: Module) -> int:
    system, offs = _hom_system(M, N)
    return offs[-1] - la.rank(system, M.p)


def hom_basis(M: Module, N: Module) -> list[Morphism]:
    return [Morphism(M, N, h) for h in hom_matrices(M, N)]


def identity_morphism(M: Module) -> Morphism:
    return Morphism(M, M, la.identity(M.dim))


def kernel_cokernel(f: Morphism) -> dict:
    """Kernel, image and cokernel of ``f`` with their canonical maps."""
    M, N, F = f.source, f.target, f.matrix % f.source.p
    p = M.p
    ker, ker_inc = submodule(M, graded_basis(M, la.kernel_basis(F, p)))
    img_basis = graded_basis(N, F)
    im, im_inc = submodule(N, img_basis)
    coker, coker_proj, _ = quotient(N, img_basis)
    # M -> im: coordinates of f(m) in the image basis
    to_im = la.matmul(la.left_inverse(im_inc, p), F, p) if im.dim else la.zeros(0, M.dim)
    return {
        "ker": ker, "ker_inclusion": Morphism(ker, M, ker_inc),
        "im": im, "im_inclusion": Morphism(im, N, im_inc), "to_im": Morphism(M, im, to_im),
        "coker": coker, "coker_projection": Morphism(N, coker, coker_proj),
    }


# ------------------------------------------------------------ decomposition

def _trace_gram(E: np.ndarray, p: int) -> np.ndarray:
    k = E.shape[0]
    F = E.reshape(k, -1)
    Ft = E.transpose(0, 2, 1).reshape(k, -1)
    return (F @ Ft.T) % p


def _require_field(M: Module) -> None:
    if M.dim >= M.p:
        raise FieldTooSmall(
            f"trace-form tests need p > dim M; got p={M.p}, dim M={M.dim}")


def endomorphism_semisimple_rank(M: Module) -> int:
    """``dim End(M) / rad End(M)`` computed from the trace form."""
    if M.dim == 0:
        return 0
    _require_field(M)
    E = hom_matrices(M, M)
    return la.rank(_trace_gram(E, M.p), M.p)


def is_indecomposable(M: Module) -> bool:
    """True iff ``End(M)`` is local (nonzero module, split semisimple quotient ``k``)."""
    key = "indec"
    if key not in M.__dict__:
        M.__dict__[key] = M.dim > 0 and endomorphism_semisimple_rank(M) == 1
    return M.__dict__[key]


@dataclass
class Summand:
    module: Module
    inclusion: np.ndarray   # dim M x dim summand
    projection: np.ndarray  # dim summand x dim M


def _fitting_split(X: Module, rng: np.random.Generator, rounds: int):
    p = X.p
    _require_field(X)
    E = hom_matrices(X, X)
    if E.shape[0] == 1 or la.rank(_trace_gram(E, p), p) == 1:
        return None
    n = X.dim
    for _ in range(rounds):
        c = rng.integers(0, p, size=E.shape[0])
        phi = np.tensordot(c, E, axes=1) % p
        for lam in la.roots(la.charpoly(phi, p), p):
            psi = la.matpow((phi - lam * la.identity(n)) % p, n, p)
            r = la.rank(psi, p)
            if 0 < r < n:
                im = graded_basis(X, psi)
                ker = graded_basis(X, la.kernel_basis(psi, p))
                Y1, i1 = submodule(X, im)
                Y2, i2 = submodule(X, ker)
                J = la.inverse(np.hstack([i1, i2]), p)
                return [(Y1, i1, J[: Y1.dim]), (Y2, i2, J[Y1.dim:])]
    raise DecompositionInconclusive(
        f"Fitting splitting stalled after {rounds} random endomorphisms on a module of dimension {n}")


def split_summands(M: Module, seed: int | None = None, rounds: int = DEFAULT_ROUNDS) -> list[Summand]:
    """Indecomposable summands of ``M`` with split inclusions and projections.

    ``seed`` defaults to the module-level ``DEFAULT_SEED`` read at call time.
    """
    rng = np.random.default_rng(DEFAULT_SEED if seed is None else seed)
    p = M.p
    out: list[Summand] = []
    stack = [(M, la.identity(M.dim), la.identity(M.dim))]
    while stack:
        X, inc, proj = stack.pop()
        if X.dim == 0:
            continue
        parts = _fitting_split(X, rng, rounds)
        if parts is None:
            out.append(Summand(X, inc, proj))
            continue
        for Y, i2, p2 in reversed(parts):
            stack.append((Y, la.matmul(inc, i2, p), la.matmul(p2, proj, p)))
    out.sort(key=lambda s: (s.module.dim, s.module.dimvec))
    return out


def decompose(M: Module, seed: int | None = None, rounds: int = DEFAULT_ROUNDS) -> list[tuple[Module, int]]:
    """Indecomposable summands grouped into isomorphism classes with multiplicities."""
    classes: list[list] = []
    for s in split_summands(M, seed, rounds):
        for entry in classes:
            if is_isomorphic(entry[0], s.module):
                entry[1] += 1
                break
        else:
            classes.append([s.module, 1])
    return [(m, k) for m, k in classes]


def _indec_iso(M: Module, N: Module) -> np.ndarray | None:
    """An isomorphism ``M -> N`` between indecomposables, or None."""
    p = M.p
    H1 = hom_matrices(M, N)
    if H1.shape[0] == 0:
        return None
    if M.dim == 0:
        return H1[0]
    H2 = hom_matrices(N, M)
    if H2.shape[0] == 0:
        return None
    # trace(g f) != 0 for some basis pair iff g f is invertible for some pair
    T = (H2.reshape(H2.shape[0], -1) @ H1.transpose(0, 2, 1).reshape(H1.shape[0], -1).T) % p
    hit = np.argwhere(T)
    if hit.size == 0:
        return None
    return H1[hit[0][1]]


def is_isomorphic(M: Module, N: Module) -> bool:
    if M.algebra is not N.algebra:
        raise ValueError("modules over different algebras")
    if M.dimvec != N.dimvec:
        return False
    if M.dim == 0:
        return True
    if is_indecomposable(M) and is_indecomposable(N):
        return _indec_iso(M, N) is not None
    if is_indecomposable(M) != is_indecomposable(N):
        return False
    left = decompose(M)
    right = decompose(N)
    if sorted(k for _, k in left) != sorted(k for _, k in right):
        return False
    unmatched = list(right)
    for X, k in left:
        for j, (Y, l) in enumerate(unmatched):
            if k == l and X.dimvec == Y.dimvec and _indec_iso(X, Y) is not None:
                unmatched.pop(j)
                break
        else:
            return False
    return True


def find_isomorphism(M: Module, N: Module) -> np.ndarray | None:
    """An explicit isomorphism between indecomposable modules, if one exists."""
    if M.dimvec != N.dimvec:
        return None
    return _indec_iso(M, N)
