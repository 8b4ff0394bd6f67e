"""Tilting and cotilting modules, torsion pairs, endomorphism algebras and chains."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .algebra import BasicAlgebra
from .ar import IndecSet, enumerate_indecomposables, resolve_module
from .homology import ext_dim, global_dimension, inj_dim, proj_dim
from .modules import (FieldTooSmall, Module, dual_module, hom_dim,
                      hom_matrices, is_isomorphic, split_summands)
from .parts import audit_almost_hereditary


def _summands(T) -> list[Module]:
    """Indecomposable summands of ``T`` (a module or a list of modules)."""
    mods = T if isinstance(T, (list, tuple)) else [T]
    out = []
    for M in mods:
        out.extend(s.module for s in split_summands(M))
    return out


def _basic(summands: list[Module]) -> list[Module]:
    classes: list[Module] = []
    for X in summands:
        if not any(is_isomorphic(X, Y) for Y in classes):
            classes.append(X)
    return classes


@dataclass
class TiltingVerdict:
    kind: str
    summands: int
    conditions: dict[str, bool]
    witnesses: dict[str, list] = field(default_factory=dict)
    splitting: bool | None = None
    stair: bool | None = None
    gldim_before: float | None = None
    gldim_after: float | None = None

    @property
    def ok(self) -> bool:
        return all(self.conditions.values())

    def to_dict(self) -> dict:
        f = lambda x: "inf" if x == math.inf else x
        return {"kind": self.kind, "summands": self.summands, "conditions": self.conditions,
                "ok": self.ok, "witnesses": self.witnesses, "splitting": self.splitting,
                "stair": self.stair, "gldim_before": f(self.gldim_before),
                "gldim_after": f(self.gldim_after)}


def check_tilting(alg: BasicAlgebra, T, kind: str = "tilting") -> TiltingVerdict:
    """The three tilting conditions, each tested on its own.

    Cotilting is the tilting check over the opposite algebra applied to the dual.
    """
    summands = _summands(T)
    if kind == "cotilting":
        dual = [dual_module(X) for X in summands]
        v = check_tilting(alg.opposite(), dual, "tilting")
        v.kind = "cotilting"
        return v
    if kind != "tilting":
        raise ValueError(f"unknown kind {kind!r}")
    basic = _basic(summands)
    bad_pd = [X.dimvec for X in basic if proj_dim(X) > 1]
    bad_ext = [(X.dimvec, Y.dimvec) for X in basic for Y in basic if ext_dim(1, X, Y)]
    conditions = {
        "pd_at_most_1": not bad_pd,
        "no_self_extensions": not bad_ext,
        "summand_count": len(basic) == alg.rank,
    }
    witnesses = {}
    if bad_pd:
        witnesses["pd_at_most_1"] = bad_pd
    if bad_ext:
        witnesses["no_self_extensions"] = bad_ext
    if len(basic) != alg.rank:
        witnesses["summand_count"] = [len(basic), alg.rank]
    return TiltingVerdict("tilting", len(basic), conditions, witnesses)


def torsion_pair(alg: BasicAlgebra, T, inds: IndecSet | None = None,
                 kind: str = "tilting") -> tuple[set[int], set[int]]:
    """Torsion and torsion-free indecomposables for the pair induced by ``T``.

    Tilting: ``T(T) = {Ext^1(T, X) = 0}``, ``F(T) = {Hom(T, X) = 0}``.
    Cotilting: torsion ``{Hom(X, T) = 0}``, torsion-free ``{Ext^1(X, T) = 0}``.
    """
    inds = inds or enumerate_indecomposables(alg)
    basic = _basic(_summands(T))
    tors, free = set(), set()
    for i, X in enumerate(inds):
        if kind == "tilting":
            if all(ext_dim(1, Y, X) == 0 for Y in basic):
                tors.add(i)
            if all(hom_dim(Y, X) == 0 for Y in basic):
                free.add(i)
        else:
            if all(hom_dim(X, Y) == 0 for Y in basic):
                tors.add(i)
            if all(ext_dim(1, X, Y) == 0 for Y in basic):
                free.add(i)
    if tors & free:
        raise AssertionError("torsion and torsion-free classes meet")
    return tors, free


def is_splitting(alg: BasicAlgebra, T, kind: str = "tilting",
                 inds: IndecSet | None = None) -> tuple[bool, list[int]]:
    """Splitting criterion: ``id <= 1`` on ``F(T)`` (dually ``pd <= 1`` on the cotorsion class)."""
    inds = inds or enumerate_indecomposables(alg)
    tors, free = torsion_pair(alg, T, inds, kind)
    if kind == "tilting":
        bad = sorted(i for i in free if inj_dim(inds[i]) > 1)
    else:
        bad = sorted(i for i in tors if proj_dim(inds[i]) > 1)
    return not bad, bad


@dataclass
class EndoAlgebra:
    algebra: BasicAlgebra
    summands: list[Module]
    # basis index in B -> (i, j, matrix) with the matrix a map T_i -> T_j
    maps: list[tuple[int, int, np.ndarray]]


def endomorphism_algebra(alg: BasicAlgebra, T, name: str | None = None) -> EndoAlgebra:
    """``B = (End T)^op`` for the basic part of ``T``; vertex ``i`` is the summand ``T_i``.

    A map ``f : T_i -> T_j`` is the basis element from vertex ``j`` to ``i``,
    so that ``f * g = g o f``.
    """
    p = alg.p
    basic = _basic(_summands(T))
    r = len(basic)
    maps: list[tuple[int, int, np.ndarray]] = []
    idempotents = []
    blocks: dict[tuple[int, int], list[int]] = {}
    for i, X in enumerate(basic):
        for j, Y in enumerate(basic):
            H = hom_matrices(X, Y)
            if i == j:
                if X.dim >= p:
                    raise FieldTooSmall(f"p too small for radical computation: need p > {X.dim}")
                k = H.shape[0]
                G = (H.reshape(k, -1) @ H.transpose(0, 2, 1).reshape(k, -1).T) % p
                rad = la.kernel_basis(G, p)
                if rad.shape[1] != k - 1:
                    raise ValueError("summand endomorphism ring is not split local")
                H = np.concatenate([la.identity(X.dim)[None], np.tensordot(rad.T, H, axes=1) % p]) \
                    if k > 1 else la.identity(X.dim)[None]
            start = len(maps)
            for h in H:
                maps.append((i, j, h % p))
            blocks[(i, j)] = list(range(start, len(maps)))
            if i == j:
                idempotents.append(start)
    d = len(maps)
    mult = np.zeros((d, d, d), dtype=np.int64)
    flat = {key: (np.stack([maps[b][2].reshape(-1) for b in idx]).T if idx else None)
            for key, idx in blocks.items()}
    for a, (i, j, f) in enumerate(maps):
        for b, (j2, k, g) in enumerate(maps):
            if j2 != j:
                continue
            comp = la.matmul(g, f, p).reshape(-1, 1)
            if not comp.any():
                continue
            idx = blocks[(i, k)]
            x, _ = la.solve(flat[(i, k)], comp, p)
            mult[a, b, idx] = x[:, 0]
    src = [j for (_, j, _) in maps]
    tgt = [i for (i, _, _) in maps]
    labels = [f"T{i + 1}->T{j + 1}#{n}" for n, (i, j, _) in enumerate(maps)]
    for v, e in enumerate(idempotents):
        labels[e] = f"e{v + 1}"
    B = BasicAlgebra(name or f"End({alg.name})^op", p, [str(v + 1) for v in range(r)], labels,
                     mult, src, tgt, idempotents)
    B.check()
    return EndoAlgebra(B, basic, maps)


@dataclass
class TransferReport:
    hypotheses: dict[str, bool]
    conclusion: str  # pass, fail, n/a
    witnesses: list[str] = field(default_factory=list)
    extra: dict[str, str] = field(default_factory=dict)


def _q2(inds: IndecSet, m, n) -> list[int]:
    return [i for i in range(len(inds)) if inds.pd(i) > m and inds.id(i) > n]


def check_transfer(alg: BasicAlgebra, T, m: int, n: int, kind: str = "tilting") -> TransferReport:
    """Behaviour of (Q2) along a splitting (co)tilting step."""
    inds = enumerate_indecomposables(alg)
    verdict = check_tilting(alg, T, kind)
    split, _ = is_splitting(alg, T, kind, inds)
    hyp = {"tilting": verdict.ok, "splitting": split, "Q2": not _q2(inds, m, n)}
    if not all(hyp.values()):
        return TransferReport(hyp, "n/a")
    B = endomorphism_algebra(alg, T).algebra
    indsB = enumerate_indecomposables(B)
    indsB.require_complete()
    mm, nn = (m, n + 1) if kind == "tilting" else (m + 1, n)
    bad = _q2(indsB, mm, nn)
    rep = TransferReport(hyp, "fail" if bad else "pass", [indsB.names[i] for i in bad])
    gA, gB = global_dimension(alg), global_dimension(B)
    stair = gA < gB
    rep.extra["stair"] = str(stair)
    if stair and audit_almost_hereditary(alg, m, n, inds).almost_hereditary:
        ok = audit_almost_hereditary(B, mm, nn, indsB).almost_hereditary
        rep.extra[f"B_is_({mm},{nn})_almost_hereditary"] = "pass" if ok else "fail"
        if not ok:
            rep.conclusion = "fail"
    if stair and gA != math.inf:
        d = int(gA)
        a, b = (d, 1) if kind == "tilting" else (1, d)
        ok = audit_almost_hereditary(B, a, b, indsB).almost_hereditary
        rep.extra[f"B_is_({a},{b})_almost_hereditary"] = "pass" if ok else "fail"
        if not ok:
            rep.conclusion = "fail"
    # Brenner-Butler count
    tors, free = torsion_pair(alg, T, inds, kind)
    rep.extra["ind_B_count"] = f"{len(indsB)} = {len(tors)} + {len(free)}"
    if len(indsB) != len(tors) + len(free):
        rep.conclusion = "fail"
    return rep


@dataclass
class ChainStep:
    kind: str
    module: str


@dataclass
class ChainSpec:
    base: str
    steps: list[ChainStep]

    @classmethod
    def from_json(cls, text: str) -> "ChainSpec":
        d = json.loads(text)
        return cls(d["base"], [ChainStep(s["kind"], s["module"]) for s in d.get("steps", [])])

    def to_json(self) -> str:
        return json.dumps({"base": self.base,
                           "steps": [{"kind": s.kind, "module": s.module} for s in self.steps]})


@dataclass
class ChainReport:
    ok: bool
    m: int
    n: int
    base: dict
    steps: list[dict]
    final: dict
    failure: str = ""

    def to_dict(self) -> dict:
        return {"ok": self.ok, "params": {"m": self.m, "n": self.n}, "base": self.base,
                "steps": self.steps, "final": self.final, "failure": self.failure}


def is_quasitilted(alg: BasicAlgebra, inds: IndecSet | None = None) -> tuple[bool, list[int]]:
    """Homological characterization: gl.dim <= 2 and every indecomposable has pd <= 1 or id <= 1."""
    inds = inds or enumerate_indecomposables(alg)
    bad = _q2(inds, 1, 1)
    return global_dimension(alg) <= 2 and not bad, bad


def verify_chain(base: BasicAlgebra, steps: list[ChainStep], m: int, n: int) -> ChainReport:
    """Certify that ``base`` reaches an (m,n)-quasitilted algebra through ``steps``."""
    inds = enumerate_indecomposables(base)
    inds.require_complete()
    gd = global_dimension(base)
    qt, bad = is_quasitilted(base, inds)
    base_info = {"id": base.name, "gldim": gd, "quasitilted": qt,
                 "witnesses": [inds.names[i] for i in bad]}
    if not (qt and gd == 2):
        return ChainReport(False, m, n, base_info, [], {},
                           "base is not quasitilted of global dimension two")
    current = base
    out_steps = []
    for k, step in enumerate(steps):
        inds = enumerate_indecomposables(current)
        inds.require_complete()
        T = resolve_module(inds, step.module)
        kind = "tilting" if step.kind == "tilt" else "cotilting"
        if step.kind not in ("tilt", "cotilt"):
            raise ValueError(f"step kind must be tilt or cotilt, got {step.kind!r}")
        v = check_tilting(current, T, kind)
        info = {"kind": step.kind, "module": step.module, "conditions": v.conditions}
        if not v.ok:
            out_steps.append(info)
            return ChainReport(False, m, n, base_info, out_steps, {},
                               f"step {k}: not {kind}: {v.witnesses}")
        split, wit = is_splitting(current, T, kind, inds)
        info["splitting"] = split
        B = endomorphism_algebra(current, T, name=f"{base.name}_{k + 1}").algebra
        g0, g1 = global_dimension(current), global_dimension(B)
        info["gldim"] = [g0, g1]
        info["stair"] = g0 < g1
        out_steps.append(info)
        if not split:
            return ChainReport(False, m, n, base_info, out_steps, {},
                               f"step {k}: not splitting, witnesses {[inds.names[i] for i in wit]}")
        if not g0 < g1:
            return ChainReport(False, m, n, base_info, out_steps, {},
                               f"step {k}: not stair (gl.dim {g0} -> {g1})")
        current = B
    tilts = sum(s.kind == "tilt" for s in steps)
    cotilts = len(steps) - tilts
    if (tilts, cotilts) != (n - 1, m - 1):
        return ChainReport(False, m, n, base_info, out_steps, {},
                           f"{tilts} tilts and {cotilts} cotilts; ({m},{n}) needs {n - 1} and {m - 1}")
    rep = audit_almost_hereditary(current, m, n)
    final = {"id": current.name, "dim": current.dim, "gldim": global_dimension(current),
             "almost_hereditary": rep.almost_hereditary}
    if not rep.almost_hereditary:
        return ChainReport(False, m, n, base_info, out_steps, final,
                           "final algebra is not almost hereditary; contradicts the corollary")
    return ChainReport(True, m, n, base_info, out_steps, final)


def chain_final_algebra(base: BasicAlgebra, steps: list[ChainStep]) -> BasicAlgebra:
    current = base
    for k, step in enumerate(steps):
        T = resolve_module(enumerate_indecomposables(current), step.module)
        current = endomorphism_algebra(current, T, name=f"{base.name}_{k + 1}").algebra
    return current


def hom_functor(endo: EndoAlgebra, X: Module, name: str | None = None) -> Module:
    """``Hom_A(T, X)`` as a module over ``B = (End T)^op`` (``B`` acts by precomposition)."""
    B = endo.algebra
    p = B.p
    bases = [hom_matrices(Ti, X) for Ti in endo.summands]
    offsets = np.cumsum([0] + [H.shape[0] for H in bases])
    d = int(offsets[-1])
    grading = np.concatenate([np.full(H.shape[0], i, dtype=np.int64) for i, H in enumerate(bases)]) \
        if d else np.zeros(0, dtype=np.int64)
    acts = np.zeros((B.dim, d, d), dtype=np.int64)
    for b, (i, j, f) in enumerate(endo.maps):
        Hj, Hi = bases[j], bases[i]
        if Hj.shape[0] == 0 or Hi.shape[0] == 0:
            continue
        flat_i = Hi.reshape(Hi.shape[0], -1).T
        for c, phi in enumerate(Hj):
            comp = la.matmul(phi, f, p).reshape(-1, 1)
            if comp.any():
                x, _ = la.solve(flat_i, comp, p)
                acts[b, offsets[i]:offsets[i + 1], offsets[j] + c] = x[:, 0]
    M = Module(B, acts, grading, name=name)
    M.check()
    return M
