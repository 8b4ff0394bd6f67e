"""Split basic algebras over GF(p) given by structure constants.

Every basis element ``b`` is homogeneous: ``b = e_t b e_s`` for a single
pair of vertices, recorded as ``src[b] = s`` and ``tgt[b] = t``.  The
product ``x * y`` follows composition order, so a path ``beta alpha``
(first ``alpha``, then ``beta``) is ``beta * alpha``.  Left modules are
covariant representations: a basis element from ``s`` to ``t`` maps the
``s``-component of a module to its ``t``-component.
"""
from __future__ import annotations

from itertools import product as iproduct

import numpy as np

from . import linalg as la
from .dsl import QuiverSpec


class AdmissibilityError(ValueError):
    pass


class BasicAlgebra:
    """A basic algebra with a distinguished homogeneous basis.

    ``mult[i, j, k]`` is the coefficient of basis element ``k`` in
    ``b_i * b_j``.  ``idempotents[v]`` is the basis index of the primitive
    idempotent of vertex ``v``; ``radical`` lists the remaining indices.
    """

    def __init__(self, name, p, vertices, labels, mult, src, tgt, idempotents,
                 spec: QuiverSpec | None = None, paths=None):
        self.name = name
        self.p = la.check_prime(p)
        self.vertices = [str(v) for v in vertices]
        self.labels = list(labels)
        self.mult = np.asarray(mult, dtype=np.int64) % p
        self.src = np.asarray(src, dtype=np.int64)
        self.tgt = np.asarray(tgt, dtype=np.int64)
        self.idempotents = list(idempotents)
        idem = set(self.idempotents)
        self.radical = [i for i in range(self.dim) if i not in idem]
        self.spec = spec
        # arrow words (traversal order) for quiver algebras
        self.paths = paths
        self._opposite: BasicAlgebra | None = None
        self._generators: list[int] | None = None
        self.cache: dict = {}

    def __repr__(self) -> str:
        return f"BasicAlgebra({self.name!r}, dim={self.dim}, vertices={len(self.vertices)}, p={self.p})"

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def rank(self) -> int:
        """Number of vertices, i.e. the rank of the Grothendieck group."""
        return len(self.vertices)

    def vertex_index(self, v) -> int:
        v = str(v)
        try:
            return self.vertices.index(v)
        except ValueError:
            raise KeyError(f"{self.name} has no vertex {v}") from None

    def basis_from(self, v: int) -> list[int]:
        """Basis of ``A e_v``: the projective at ``v``."""
        return [int(i) for i in np.flatnonzero(self.src == v)]

    def basis_to(self, v: int) -> list[int]:
        """Basis of ``e_v A``."""
        return [int(i) for i in np.flatnonzero(self.tgt == v)]

    def product(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self.mult) % self.p

    def left_matrix(self, a: int) -> np.ndarray:
        """Matrix of ``y -> b_a * y`` on the basis."""
        return self.mult[a].T.copy()

    @property
    def generators(self) -> list[int]:
        """Radical basis elements whose span complements ``rad^2`` in ``rad``.

        Together with the idempotents they generate the algebra.
        """
        if self._generators is None:
            rad = self.radical
            if not rad:
                self._generators = []
            else:
                sq = self.mult[np.ix_(rad, rad)].reshape(-1, self.dim)
                sq = la.column_space(sq.T % self.p, self.p)
                eye = np.eye(self.dim, dtype=np.int64)[:, rad]
                picked = la.extend_basis(sq, eye, self.p)
                self._generators = [rad[i] for i in picked]
        return self._generators

    def opposite(self) -> "BasicAlgebra":
        if self._opposite is None:
            name = self.name[:-3] if self.name.endswith("^op") else self.name + "^op"
            op = BasicAlgebra(name, self.p, self.vertices, self.labels,
                              self.mult.transpose(1, 0, 2), self.tgt, self.src,
                              self.idempotents,
                              paths=None if self.paths is None else [tuple(reversed(w)) for w in self.paths])
            op._opposite = self
            self._opposite = op
        return self._opposite

    def check(self) -> None:
        """Verify associativity, idempotent and grading axioms; raise on failure."""
        p, d = self.p, self.dim
        c = self.mult
        # (xy)z vs x(yz) on basis triples
        for i in range(d):
            left = np.einsum("jm,mkn->jkn", c[i], c) % p
            right = np.einsum("jkm,mn->jkn", c, c[i]) % p
            if not np.array_equal(left, right):
                raise ValueError(f"{self.name}: multiplication is not associative")
        one = np.zeros(d, dtype=np.int64)
        one[self.idempotents] = 1
        for v, e in enumerate(self.idempotents):
            if self.src[e] != v or self.tgt[e] != v:
                raise ValueError("idempotent grading mismatch")
        for i in range(d):
            ei = np.zeros(d, dtype=np.int64)
            ei[i] = 1
            if not np.array_equal(self.product(one, ei), ei) or not np.array_equal(self.product(ei, one), ei):
                raise ValueError(f"{self.name}: idempotents do not sum to the identity")
            et = np.zeros(d, dtype=np.int64)
            et[self.idempotents[self.tgt[i]]] = 1
            es = np.zeros(d, dtype=np.int64)
            es[self.idempotents[self.src[i]]] = 1
            if not np.array_equal(self.product(self.product(et, ei), es), ei):
                raise ValueError(f"{self.name}: basis element {self.labels[i]} is not homogeneous")
        # radical nilpotent: rad^d = 0
        rad = self.radical
        if rad:
            span = np.eye(d, dtype=np.int64)[:, rad]
            for _ in range(d + 1):
                if span.shape[1] == 0:
                    break
                prods = np.einsum("jk,rjl->lrk", span, c[rad]) % p
                span = la.column_space(prods.reshape(d, -1), p)
            if span.shape[1]:
                raise ValueError(f"{self.name}: radical is not nilpotent")

    def cartan(self) -> np.ndarray:
        """``C[v, w] = dim e_w A e_v`` (column v is the dimension vector of P(v))."""
        r = self.rank
        C = np.zeros((r, r), dtype=np.int64)
        for s, t in zip(self.src, self.tgt):
            C[s, t] += 1
        return C


def structurally_equal(A: BasicAlgebra, B: BasicAlgebra) -> bool:
    return (A.p == B.p and A.vertices == B.vertices and A.labels == B.labels
            and np.array_equal(A.mult, B.mult) and np.array_equal(A.src, B.src)
            and np.array_equal(A.tgt, B.tgt) and A.idempotents == B.idempotents)


def build_algebra(spec: QuiverSpec, cap: int = 64) -> BasicAlgebra:
    """Path algebra of the quiver modulo the ideal generated by the relations.

    The ideal is computed by linear closure of ``{u r w}`` inside paths of
    length at most ``N``, raising ``N`` until every path of length ``N``
    lies in it.  Normal forms prefer short, then lexicographically small,
    paths.
    """
    p = spec.p
    vidx = {v: i for i, v in enumerate(spec.vertices)}
    arrows = spec.arrows
    aidx = {a.name: i for i, a in enumerate(arrows)}
    a_src = [vidx[a.source] for a in arrows]
    a_tgt = [vidx[a.target] for a in arrows]
    out_arrows = [[i for i, s in enumerate(a_src) if s == v] for v in range(len(spec.vertices))]
    rels = [[(c, tuple(aidx[a] for a in w)) for c, w in r.terms] for r in spec.relations]
    maxlen = max([len(w) for r in rels for _, w in r], default=1)

    def paths_upto(N):
        """All paths of length 1..N as arrow-index tuples (traversal order)."""
        out = []
        layer = [(i,) for i in range(len(arrows))]
        length = 1
        while layer and length <= N:
            out.extend(layer)
            layer = [w + (j,) for w in layer for j in out_arrows[a_tgt[w[-1]]]]
            length += 1
        return out, bool(layer)

    N = max(maxlen, 1)
    while True:
        if N > cap:
            raise AdmissibilityError(f"ideal not admissible within cap L={cap}")
        paths, longer_exist = paths_upto(N)
        pidx = {w: i for i, w in enumerate(paths)}
        by_len: dict[int, list[tuple]] = {}
        for w in paths:
            by_len.setdefault(len(w), []).append(w)
        # paths ending at v / starting at v, including the trivial one
        ending = {v: [()] for v in range(len(spec.vertices))}
        starting = {v: [()] for v in range(len(spec.vertices))}
        for w in paths:
            ending[a_tgt[w[-1]]].append(w)
            starting[a_src[w[0]]].append(w)
        gens = []
        for r in rels:
            s = a_src[r[0][1][0]]
            t = a_tgt[r[0][1][-1]]
            shortest = min(len(w) for _, w in r)
            for u in ending[s]:
                if len(u) + shortest > N:
                    continue
                for w in starting[t]:
                    if len(u) + len(w) + shortest > N:
                        continue
                    vec = {}
                    for c, term in r:
                        full = u + term + w
                        if len(full) <= N:
                            k = pidx[full]
                            vec[k] = (vec.get(k, 0) + c) % p
                    gens.append(vec)
        # group by endpoints; columns ordered longest first, then reverse lex
        groups: dict[tuple[int, int], list[tuple]] = {}
        for w in paths:
            groups.setdefault((a_src[w[0]], a_tgt[w[-1]]), []).append(w)
        reduce_table: dict[tuple, dict[tuple, int]] = {}
        normal: list[tuple] = []
        ideal_ok = True
        for key, ws in groups.items():
            order = sorted(ws, key=lambda w: (-len(w), tuple(-x for x in w)))
            col = {w: j for j, w in enumerate(order)}
            rows = []
            for g in gens:
                if not g:
                    continue
                first = paths[next(iter(g))]
                if (a_src[first[0]], a_tgt[first[-1]]) != key:
                    continue
                row = np.zeros(len(order), dtype=np.int64)
                for k, c in g.items():
                    row[col[paths[k]]] = c
                rows.append(row)
            if rows:
                R, piv, r = la.rref(np.array(rows), p)
            else:
                R, piv, r = np.zeros((0, len(order)), np.int64), [], 0
            pivset = set(piv)
            for i, pc in enumerate(piv):
                w = order[pc]
                reduce_table[w] = {order[c]: int((-R[i, c]) % p)
                                   for c in range(len(order)) if c not in pivset and R[i, c]}
            for j, w in enumerate(order):
                if j not in pivset:
                    normal.append(w)
                    if len(w) == N and longer_exist:
                        ideal_ok = False
        if ideal_ok:
            break
        N += 1

    normal.sort(key=lambda w: (len(w), w))
    nverts = len(spec.vertices)
    d = nverts + len(normal)
    index = {w: nverts + i for i, w in enumerate(normal)}
    labels = [f"e{v}" for v in spec.vertices] + ["*".join(arrows[a].name for a in w) for w in normal]
    src = list(range(nverts)) + [a_src[w[0]] for w in normal]
    tgt = list(range(nverts)) + [a_tgt[w[-1]] for w in normal]

    def normal_form(w: tuple) -> dict[int, int]:
        if len(w) > N:
            return {}
        if w in index:
            return {index[w]: 1}
        if w in reduce_table:
            return {index[u]: c for u, c in reduce_table[w].items()}
        return {}

    mult = np.zeros((d, d, d), dtype=np.int64)
    words = [()] * nverts + normal
    for i, j in iproduct(range(d), range(d)):
        # b_i * b_j: first b_j, then b_i
        if src[i] != tgt[j]:
            continue
        if i < nverts:
            mult[i, j, j] = 1
            continue
        if j < nverts:
            mult[i, j, i] = 1
            continue
        for k, c in normal_form(words[j] + words[i]).items():
            mult[i, j, k] = c
    paths_named = [()] * nverts + [tuple(arrows[a].name for a in w) for w in normal]
    return BasicAlgebra(spec.name, p, spec.vertices, labels, mult, src, tgt,
                        list(range(nverts)), spec=spec, paths=paths_named)


def product_algebra_with_point(B: BasicAlgebra, vertex: str) -> BasicAlgebra:
    """``B x GF(p)``: adds an isolated vertex."""
    d = B.dim + 1
    mult = np.zeros((d, d, d), dtype=np.int64)
    mult[: B.dim, : B.dim, : B.dim] = B.mult
    mult[B.dim, B.dim, B.dim] = 1
    r = B.rank
    return BasicAlgebra(f"{B.name}x{vertex}", B.p, B.vertices + [vertex], B.labels + [f"e{vertex}"],
                        mult, list(B.src) + [r], list(B.tgt) + [r], B.idempotents + [B.dim])
