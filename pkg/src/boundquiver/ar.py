"""Transpose, Auslander-Reiten translates and enumeration of indecomposables."""
from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .algebra import BasicAlgebra
from .homology import (ProjectiveSum, ext_space, extension_from_cocycle, induced_ext_map,
                       inj_dim, proj_dim, resolution)
from .modules import (Module, Morphism, _require_field, dual_module, find_isomorphism,
                      from_spec, graded_basis, hom_matrices, injective, is_indecomposable,
                      projective, quotient, simple, split_summands, submodule)
from . import oracles

DEFAULT_MAX_MODULES = 10000
DEFAULT_MAX_DIM = 512


class EnumerationCapExceeded(RuntimeError):
    pass


def transpose(M: Module) -> Module:
    """``Tr M`` over the opposite algebra, from a minimal projective presentation."""
    A = M.algebra
    op = A.opposite()
    p = A.p
    res = resolution(M)
    P0, P1 = res.term(0), res.term(1)
    if P1.dim == 0:
        return Module(op, np.zeros((op.dim, 0, 0), dtype=np.int64), [])
    d = res.diff(1)
    Q0 = ProjectiveSum(op, P0.vertices)
    Q1 = ProjectiveSum(op, P1.vertices)
    D = la.zeros(Q1.dim, Q0.dim)
    for l, w in enumerate(P1.vertices):
        rows = A.basis_to(w)
        r0 = Q1.offsets[l]
        for j, v in enumerate(P0.vertices):
            src_basis = P0.summand_basis(j)
            x = np.zeros(A.dim, dtype=np.int64)
            x[src_basis] = d[P0.offsets[j]:P0.offsets[j] + len(src_basis), P1.gens[l]]
            if not x.any():
                continue
            cols = A.basis_to(v)
            # y -> x * y on e_v A, landing in e_w A
            L = np.einsum("a,abk->kb", x, A.mult) % p
            D[r0:r0 + len(rows), Q0.offsets[j]:Q0.offsets[j] + len(cols)] = L[np.ix_(rows, cols)]
    image = graded_basis(Q1.module, D)
    return quotient(Q1.module, image)[0]


def tau(M: Module) -> Module:
    return dual_module(transpose(M))


def tau_inverse(M: Module) -> Module:
    return transpose(dual_module(M))


def ar_translate(M: Module, direction: str = "tau") -> Module:
    if direction in ("tau", "τ"):
        return tau(M)
    if direction in ("tau-1", "tau_inv", "τ⁻¹", "tau^-1"):
        return tau_inverse(M)
    raise ValueError(f"unknown direction {direction!r}")


@dataclass
class IndecSet:
    """Representatives of the indecomposable modules of an algebra."""

    algebra: BasicAlgebra
    modules: list[Module]
    names: list[str]
    tau_inv: list[int | None]
    tau_of: list[int | None]
    complete: bool = True
    problems: list[str] = field(default_factory=list)
    assumption: str = "representation-directed (enumeration by inverse translates of projectives)"

    def __len__(self) -> int:
        return len(self.modules)

    def __iter__(self):
        return iter(self.modules)

    def __getitem__(self, i: int) -> Module:
        return self.modules[i]

    def find(self, M: Module) -> int | None:
        for i, X in enumerate(self.modules):
            if X.dimvec == M.dimvec and find_isomorphism(X, M) is not None:
                return i
        return None

    def index(self, name: str) -> int:
        return self.names.index(name)

    def pd(self, i: int):
        return proj_dim(self.modules[i])

    def id(self, i: int):
        return inj_dim(self.modules[i])

    def orbits(self) -> list[list[int]]:
        """tau-orbits, each listed from its projective (or its least member if periodic)."""
        out, seen = [], set()
        starts = [i for i in range(len(self.modules)) if self.tau_of[i] is None]
        starts += [i for i in range(len(self.modules)) if self.tau_of[i] is not None]
        for i in starts:
            if i in seen:
                continue
            orbit = [i]
            seen.add(i)
            while self.tau_inv[orbit[-1]] is not None and self.tau_inv[orbit[-1]] not in seen:
                orbit.append(self.tau_inv[orbit[-1]])
                seen.add(orbit[-1])
            out.append(orbit)
        return out

    def require_complete(self) -> None:
        if not self.complete:
            raise IncompleteEnumeration("; ".join(self.problems) or "enumeration is partial")


class IncompleteEnumeration(RuntimeError):
    pass


def _tags(alg: BasicAlgebra, M: Module) -> list[str]:
    tags = []
    for v in range(alg.rank):
        for kind, fn in (("P", projective), ("I", injective), ("S", simple)):
            X = fn(alg, v)
            if X.dimvec == M.dimvec and find_isomorphism(X, M) is not None:
                tags.append(f"{kind}{alg.vertices[v]}")
    return tags


def ar_sequence(X: Module):
    """The almost split sequence ``0 -> X -> E -> tau^-1 X -> 0`` (None for injective X)."""
    p = X.p
    Z = tau_inverse(X)
    if Z.dim == 0:
        return None
    E1 = ext_space(1, Z, X)
    H = hom_matrices(Z, Z)
    _require_field(Z)
    G = (H.reshape(H.shape[0], -1) @ H.transpose(0, 2, 1).reshape(H.shape[0], -1).T) % p
    rad = la.kernel_basis(G, p)
    blocks = [induced_ext_map(Morphism(Z, Z, np.tensordot(c, H, axes=1) % p), 1, X)
              for c in rad.T]
    if blocks:
        xi = la.kernel_basis(np.vstack(blocks), p)
    else:
        xi = la.identity(E1.dim)
    if xi.shape[1] == 0:
        raise RuntimeError("no almost split class found; translate computation is inconsistent")
    return extension_from_cocycle(Z, X, xi[:, 0])


def enumerate_indecomposables(alg: BasicAlgebra, max_modules: int | None = None,
                              max_dim: int | None = None) -> IndecSet:
    """The Auslander-Reiten component containing the projectives.

    Knitting closure under ``tau``, ``tau^-1``, middle terms of almost split
    sequences and radicals of projectives.  When the component is finite it is
    all of ``ind A`` (Auslander's theorem).
    """
    max_modules = DEFAULT_MAX_MODULES if max_modules is None else max_modules
    max_dim = DEFAULT_MAX_DIM if max_dim is None else max_dim
    key = ("indec", max_modules, max_dim)
    if key in alg.cache:
        return alg.cache[key]
    modules: list[Module] = []
    tau_inv: list[int | None] = []
    tau_of: list[int | None] = []
    by_dimvec: dict[tuple, list[int]] = {}
    problems: list[str] = []

    def lookup(M):
        for i in by_dimvec.get(M.dimvec, []):
            if find_isomorphism(modules[i], M) is not None:
                return i
        return None

    def intern(M):
        j = lookup(M)
        if j is not None:
            return j
        if M.dim > max_dim:
            raise EnumerationCapExceeded(
                f"module of dimension {M.dim} exceeds max_dim={max_dim}: "
                "possibly representation-infinite or not directed")
        if len(modules) >= max_modules:
            raise EnumerationCapExceeded(
                f"more than {max_modules} indecomposables: possibly representation-infinite or not directed")
        if not is_indecomposable(M):
            problems.append(f"module with dimension vector {M.dimvec} expected indecomposable")
        modules.append(M)
        tau_inv.append(None)
        tau_of.append(None)
        by_dimvec.setdefault(M.dimvec, []).append(len(modules) - 1)
        return len(modules) - 1

    for v in range(alg.rank):
        intern(projective(alg, v))
    k = 0
    while k < len(modules):
        X = modules[k]
        T = tau(X)
        if T.dim:
            j = intern(T)
            if tau_of[k] not in (None, j) or tau_inv[j] not in (None, k):
                problems.append(f"translate of module {k} is inconsistent")
            tau_of[k], tau_inv[j] = j, k
        else:
            for s in split_summands(submodule(X, X.radical_basis)[0]):
                intern(s.module)
        seq = ar_sequence(X)
        if seq is not None:
            j = intern(seq.right)
            if tau_inv[k] not in (None, j) or tau_of[j] not in (None, k):
                problems.append(f"inverse translate of module {k} is inconsistent")
            tau_inv[k], tau_of[j] = j, k
            for s in split_summands(seq.middle):
                intern(s.module)
        k += 1

    names = [f"M{i}" for i in range(len(modules))]
    for i, M in enumerate(modules):
        tags = _tags(alg, M)
        if tags:
            names[i] = "/".join(tags)
        M.name = names[i]
    inds = IndecSet(alg, modules, names, tau_inv, tau_of)
    for v in range(alg.rank):
        if lookup(injective(alg, v)) is None:
            problems.append(f"injective I{alg.vertices[v]} missing")
    if alg.spec is not None and oracles.is_linear_nakayama(alg.spec):
        expected = sorted(tuple(from_spec(alg, m).dimvec) for m in oracles.interval_modules(alg.spec))
        found = sorted(M.dimvec for M in modules)
        if expected != found:
            problems.append("enumeration differs from the interval model")
    if any(len(o) and inds.tau_of[o[0]] is not None for o in inds.orbits()):
        inds.assumption = "finite AR component containing the projectives; has periodic translate orbits"
    inds.problems = problems
    inds.complete = not problems
    alg.cache[key] = inds
    return inds


def radical_maps(M: Module, N: Module) -> np.ndarray:
    """Basis of ``rad(M, N)`` for indecomposable ``M``, ``N``."""
    H = hom_matrices(M, N)
    if M.dimvec != N.dimvec or find_isomorphism(M, N) is None or H.shape[0] == 0:
        return H
    p = M.p
    # non-invertible maps: trace-zero after composing with a fixed isomorphism back
    back = find_isomorphism(N, M)
    traces = np.array([int(np.trace((back @ h) % p)) % p for h in H], dtype=np.int64)
    K = la.kernel_basis(traces.reshape(1, -1), p)
    return np.tensordot(K.T, H, axes=1) % p


def irreducible_multiplicity(inds: IndecSet, i: int, j: int) -> int:
    """``dim rad(M_i, M_j) / rad^2(M_i, M_j)`` computed over the finite set."""
    p = inds.algebra.p
    Mi, Mj = inds[i], inds[j]
    R = radical_maps(Mi, Mj)
    if R.shape[0] == 0:
        return 0
    comps = []
    for z, Z in enumerate(inds.modules):
        A1 = radical_maps(Mi, Z)
        if A1.shape[0] == 0:
            continue
        A2 = radical_maps(Z, Mj)
        if A2.shape[0] == 0:
            continue
        prod = np.einsum("bxz,azy->abxy", A2, A1) % p
        comps.append(prod.reshape(-1, Mj.dim * Mi.dim))
    r_all = la.rank(R.reshape(R.shape[0], -1), p)
    if not comps:
        return r_all
    sq = la.rank(np.concatenate(comps), p)
    return r_all - sq


def ar_quiver_dot(inds: IndecSet) -> str:
    """Graphviz digraph of the AR quiver; dotted edges mark the translate."""
    alg = inds.algebra
    n = len(inds)
    hom_nonzero = [[hom_matrices(inds[i], inds[j]).shape[0] > 0 for j in range(n)] for i in range(n)]
    lines = [f'digraph "{alg.name}" {{', "  rankdir=LR;"]
    for i, M in enumerate(inds.modules):
        tags = inds.names[i] if not inds.names[i].startswith("M") else ""
        label = M.dimvec_str() + (f"\\n{tags}" if tags else "")
        lines.append(f'  n{i} [label="{label}"];')
    for i in range(n):
        for j in range(n):
            if i == j or not hom_nonzero[i][j]:
                continue
            k = irreducible_multiplicity(inds, i, j)
            if k:
                attr = f' [label="{k}"]' if k > 1 else ""
                lines.append(f"  n{i} -> n{j}{attr};")
    for i, j in enumerate(inds.tau_inv):
        if j is not None:
            lines.append(f"  n{j} -> n{i} [style=dotted, arrowhead=none, constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def ar_edges(inds: IndecSet) -> list[tuple[int, int, int]]:
    out = []
    for i in range(len(inds)):
        for j in range(len(inds)):
            if i != j:
                k = irreducible_multiplicity(inds, i, j)
                if k:
                    out.append((i, j, k))
    return out


_REF = re.compile(r"^\s*(?:(?P<kind>[PIS])(?P<v>[^\s+()\[\]]+)|\[(?P<a>[^\].]+)(?:\.\.|,)(?P<b>[^\]]+)\]|\[(?P<one>[^\]]+)\]"
                  r"|\((?P<dv>[\d,\s]+)\)|(?P<name>M\d+))\s*$")


class ModuleRefError(ValueError):
    pass


def resolve_module(inds: IndecSet, expr: str) -> list[Module]:
    """Summands named by ``expr``, e.g. ``P4 + [4..7] + S4 + (0,1,1) + M12``.

    ``[a..b]`` is the indecomposable with dimension vector 1 exactly on the
    vertices whose labels lie between ``a`` and ``b`` in the vertex order.
    """
    alg = inds.algebra
    out = []
    for part in expr.split("+"):
        m = _REF.match(part)
        if not m:
            raise ModuleRefError(f"cannot parse module reference {part.strip()!r}")
        if m.group("kind"):
            fn = {"P": projective, "I": injective, "S": simple}[m.group("kind")]
            try:
                v = alg.vertex_index(m.group("v"))
            except (KeyError, ValueError):
                raise ModuleRefError(f"unknown vertex {m.group('v')!r}") from None
            out.append(inds[inds.find(fn(alg, v))])
            continue
        if m.group("name"):
            k = int(m.group("name")[1:])
            if k >= len(inds):
                raise ModuleRefError(f"no module {m.group('name')}")
            out.append(inds[k])
            continue
        if m.group("dv"):
            dv = tuple(int(x) for x in m.group("dv").split(","))
        else:
            a, b = (m.group("a"), m.group("b")) if m.group("a") else (m.group("one"), m.group("one"))
            try:
                ia, ib = sorted((alg.vertex_index(a.strip()), alg.vertex_index(b.strip())))
            except (KeyError, ValueError):
                raise ModuleRefError(f"unknown vertex in {part.strip()!r}") from None
            dv = tuple(1 if ia <= v <= ib else 0 for v in range(alg.rank))
        hits = [X for X in inds if X.dimvec == dv]
        if len(hits) != 1:
            raise ModuleRefError(f"{part.strip()!r} matches {len(hits)} indecomposables")
        out.append(hits[0])
    return out
