"""Hom digraph over ind A, left and right parts, trisections and audits."""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

import networkx as nx
import numpy as np

from .algebra import BasicAlgebra
from .ar import IndecSet, enumerate_indecomposables
from .homology import global_dimension
from .modules import hom_dim, projective


def _fmt_dim(x):
    return "inf" if x == math.inf else int(x)


def hom_dims(inds: IndecSet) -> np.ndarray:
    """``H[i, j] = dim Hom(M_i, M_j)`` over the enumerated set (cached)."""
    H = getattr(inds, "_hom_dims", None)
    if H is None:
        n = len(inds)
        H = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                # Hom vanishes unless the supports meet
                if any(a and b for a, b in zip(inds[i].dimvec, inds[j].dimvec)):
                    H[i, j] = hom_dim(inds[i], inds[j])
        inds._hom_dims = H
    return H


class HomDigraph:
    """Edge ``i -> j`` iff ``i != j`` and ``Hom(M_i, M_j) != 0``."""

    def __init__(self, inds: IndecSet):
        inds.require_complete()
        self.inds = inds
        H = hom_dims(inds)
        self.graph = nx.DiGraph()
        self.graph.add_nodes_from(range(len(inds)))
        self.graph.add_edges_from((int(i), int(j)) for i, j in zip(*np.nonzero(H)) if i != j)

    def predecessors(self, i: int) -> set[int]:
        return nx.ancestors(self.graph, i) | {i}

    def successors(self, i: int) -> set[int]:
        return nx.descendants(self.graph, i) | {i}

    def closure_down(self, nodes: Iterable[int]) -> set[int]:
        """Everything reachable from ``nodes``, including them."""
        out = set()
        for i in nodes:
            if i not in out:
                out |= self.successors(i)
        return out

    def closure_up(self, nodes: Iterable[int]) -> set[int]:
        out = set()
        for i in nodes:
            if i not in out:
                out |= self.predecessors(i)
        return out


def digraph(inds: IndecSet) -> HomDigraph:
    G = getattr(inds, "_digraph", None)
    if G is None:
        G = inds._digraph = HomDigraph(inds)
    return G


Criterion = "int | Callable[[int], bool]"


def _as_predicate(inds: IndecSet, criterion, kind: str) -> Callable[[int], bool]:
    if callable(criterion):
        return criterion
    bound = criterion
    if kind == "pd":
        return lambda i: inds.pd(i) <= bound
    return lambda i: inds.id(i) <= bound


def part_L(inds: IndecSet, criterion) -> set[int]:
    """Modules all of whose predecessors satisfy ``criterion`` (``pd <= m`` for an int)."""
    ok = _as_predicate(inds, criterion, "pd")
    G = digraph(inds)
    bad = [i for i in range(len(inds)) if not ok(i)]
    return set(range(len(inds))) - G.closure_down(bad)


def part_R(inds: IndecSet, criterion) -> set[int]:
    """Modules all of whose successors satisfy ``criterion`` (``id <= n`` for an int)."""
    ok = _as_predicate(inds, criterion, "id")
    G = digraph(inds)
    bad = [i for i in range(len(inds)) if not ok(i)]
    return set(range(len(inds))) - G.closure_up(bad)


@dataclass
class Trisection:
    left: set[int]
    middle: set[int]
    right: set[int]
    outside: set[int]
    cross_hom_zero: bool
    witnesses: list[tuple[int, int]]


def trisection(inds: IndecSet, m: int, n: int) -> Trisection:
    L, R = part_L(inds, m), part_R(inds, n)
    H = hom_dims(inds)
    bad = [(i, j) for i in R - L for j in L - R if H[i, j]]
    outside = set(range(len(inds))) - (L | R)
    return Trisection(L - R, L & R, R - L, outside, not bad, bad)


@dataclass
class Check:
    name: str
    verdict: str  # pass, fail, n/a, info
    witnesses: list[int] = field(default_factory=list)
    detail: str = ""


@dataclass
class AuditReport:
    algebra: dict
    params: dict
    indecomposables: list[dict]
    checks: list[Check]
    assumption: str = ""

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def verdict(self, name: str) -> str:
        return self.check(name).verdict

    @property
    def almost_hereditary(self) -> bool:
        return self.verdict("Q1") == "pass" and self.verdict("Q2") == "pass"

    @property
    def ok(self) -> bool:
        """No hard failure: definition checks pass and no theorem instance is violated."""
        return all(c.verdict != "fail" for c in self.checks)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["checks"] = [{k: v for k, v in asdict(c).items() if k != "detail" or v} for c in self.checks]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)


def _module_ids(inds: IndecSet, S: Iterable[int]) -> list[str]:
    return [inds.names[i] for i in sorted(S)]


def audit_almost_hereditary(alg: BasicAlgebra, m: int, n: int,
                            inds: IndecSet | None = None) -> AuditReport:
    """Definition checks (Q1), (Q2) and the theorem instances that apply to ``(m, n)``."""
    inds = inds or enumerate_indecomposables(alg)
    inds.require_complete()
    N = len(inds)
    gd = global_dimension(alg)
    pds = [inds.pd(i) for i in range(N)]
    ids = [inds.id(i) for i in range(N)]
    L, R = part_L(inds, m), part_R(inds, n)
    checks = []

    if gd == m + n:
        checks.append(Check("Q1", "pass"))
    else:
        worst = [i for i in range(N) if pds[i] == gd] if gd != math.inf else []
        checks.append(Check("Q1", "fail", worst[:1] or [int(np.argmax(pds))],
                            f"gl.dim = {_fmt_dim(gd)}, expected {m + n}"))

    q2_bad = [i for i in range(N) if pds[i] > m and ids[i] > n]
    checks.append(Check("Q2", "fail" if q2_bad else "pass", q2_bad))

    if q2_bad:
        checks.append(Check("gldim_bound", "n/a"))
    else:
        ok = gd <= m + n + 1
        checks.append(Check("gldim_bound", "pass" if ok else "fail", [] if ok else q2_bad,
                            f"gl.dim = {_fmt_dim(gd)} <= {m + n + 1}"))

    everything = set(range(N))
    if not q2_bad and gd == max(m, n) + 1:
        miss = everything - (L | R)
        checks.append(Check("L_m_union_R_n", "fail" if miss else "pass", sorted(miss)))
    else:
        checks.append(Check("L_m_union_R_n", "n/a"))

    if n == 1 and not q2_bad and gd == m + 1:
        miss = everything - (L | R)
        checks.append(Check("L_m_union_R", "fail" if miss else "pass", sorted(miss)))
    else:
        checks.append(Check("L_m_union_R", "n/a"))

    tri = trisection(inds, m, n)
    if not q2_bad and gd == max(m, n) + 1:
        wit = sorted({i for pair in tri.witnesses for i in pair} | tri.outside)
        checks.append(Check("trisection", "pass" if tri.cross_hom_zero and not tri.outside else "fail", wit))
    else:
        checks.append(Check("trisection", "n/a"))

    report = AuditReport(
        algebra={"id": alg.name, "dim": alg.dim, "gldim": _fmt_dim(gd)},
        params={"m": m, "n": n},
        indecomposables=[{"id": inds.names[i], "dimvec": list(inds[i].dimvec),
                          "pd": _fmt_dim(pds[i]), "injdim": _fmt_dim(ids[i]),
                          "inL": i in L, "inR": i in R} for i in range(N)],
        checks=checks,
        assumption=inds.assumption,
    )
    return report


def lemma_hom_vanishing(inds: IndecSet, m: int, n: int) -> list[tuple[int, int]] | None:
    """Pairs violating ``Hom(U, V) = 0`` for ``pd U > m``, ``id V > n``.

    Returns None when the hypothesis (gl.dim <= m+1 and every indecomposable has
    ``pd <= m`` or ``id <= n``) does not hold.
    """
    N = len(inds)
    gd = global_dimension(inds.algebra)
    if gd > m + 1 or any(inds.pd(i) > m and inds.id(i) > n for i in range(N)):
        return None
    H = hom_dims(inds)
    return [(u, v) for u in range(N) for v in range(N)
            if inds.pd(u) > m and inds.id(v) > n and H[u, v]]


def lemma_predecessors_in_class(inds: IndecSet, m: int, n: int) -> list[tuple[int, int]] | None:
    """Pairs ``(Y, X)`` with ``id X > n`` and ``Y`` a predecessor of ``X`` with ``pd Y > m``."""
    N = len(inds)
    gd = global_dimension(inds.algebra)
    if gd > m + 1 or any(inds.pd(i) > m and inds.id(i) > n for i in range(N)):
        return None
    G = digraph(inds)
    return [(y, x) for x in range(N) if inds.id(x) > n
            for y in sorted(G.predecessors(x)) if inds.pd(y) > m]


def projectives_in_L(inds: IndecSet, m: int) -> tuple[bool, list[int]]:
    alg = inds.algebra
    L = part_L(inds, m)
    idx = [inds.find(projective(alg, v)) for v in range(alg.rank)]
    missing = [i for i in idx if i not in L]
    return not missing, missing


def check_add_Lm(alg: BasicAlgebra, m: int, inds: IndecSet | None = None) -> AuditReport:
    """Sufficient condition ``A in add L^m``, its consequences, and the conjecture probe."""
    inds = inds or enumerate_indecomposables(alg)
    inds.require_complete()
    N = len(inds)
    gd = global_dimension(alg)
    holds, missing = projectives_in_L(inds, m)
    checks = [Check("A_in_add_Lm", "pass" if holds else "info", missing)]
    if holds:
        ok_gd = gd <= m + 1
        checks.append(Check("gldim_at_most_m_plus_1", "pass" if ok_gd else "fail",
                            [] if ok_gd else [i for i in range(N) if inds.pd(i) > m + 1][:1]))
        bad = [i for i in range(N) if inds.pd(i) > m and inds.id(i) > 1]
        checks.append(Check("pd_m_or_id_1", "fail" if bad else "pass", bad))
        # the torsion-free-class version: id >= 2 forces tau^-1 X into L^m
        L = part_L(inds, m)
        viol = [i for i in range(N) if inds.id(i) >= 2 and inds.pd(i) > m]
        viol += [i for i in range(N) if inds.id(i) >= 2 and inds.tau_inv[i] is not None
                 and inds.tau_inv[i] not in L and inds.pd(i) > m]
        checks.append(Check("id_ge_2_in_class", "fail" if viol else "pass", sorted(set(viol))))
        if gd == m + 1:
            bad2 = [i for i in range(N) if inds.pd(i) > m and inds.id(i) > 1]
            checks.append(Check("m1_almost_hereditary", "fail" if bad2 else "pass", bad2))
    else:
        checks.append(Check("gldim_at_most_m_plus_1", "n/a"))
        checks.append(Check("pd_m_or_id_1", "n/a"))
    # conjecture probe: informational only
    q2 = all(inds.pd(i) <= m or inds.id(i) <= 1 for i in range(N))
    if gd == m + 1 and q2:
        checks.append(Check("conjecture", "info", missing,
                            "holds" if holds else "counterexample: projective outside L^m"))
    else:
        checks.append(Check("conjecture", "n/a", [], "algebra is not (m,1)-almost hereditary"))
    return AuditReport(
        algebra={"id": alg.name, "dim": alg.dim, "gldim": _fmt_dim(gd)},
        params={"m": m, "n": 1},
        indecomposables=[{"id": inds.names[i], "dimvec": list(inds[i].dimvec),
                          "pd": _fmt_dim(inds.pd(i)), "injdim": _fmt_dim(inds.id(i)),
                          "inL": None, "inR": None} for i in range(N)],
        checks=checks,
        assumption=inds.assumption,
    )


def pd_class_predicate(inds: IndecSet, m: int) -> Callable[[int], bool]:
    return lambda i: inds.pd(i) <= m


def part_L_C(inds: IndecSet, predicate: Callable[[int], bool]) -> set[int]:
    return part_L(inds, predicate)


def proposition_L_C(inds: IndecSet, predicate: Callable[[int], bool], n: int) -> tuple[str, list[int]]:
    """``ind A = L_C u R^n`` when every module is in C or has ``id <= n``."""
    N = len(inds)
    if any(not predicate(i) and inds.id(i) > n for i in range(N)):
        return "n/a", []
    miss = set(range(N)) - (part_L(inds, predicate) | part_R(inds, n))
    return ("fail" if miss else "pass"), sorted(miss)


__all__ = [
    "HomDigraph", "digraph", "hom_dims", "part_L", "part_R", "part_L_C", "trisection",
    "Trisection", "Check", "AuditReport", "audit_almost_hereditary", "check_add_Lm",
    "lemma_hom_vanishing", "lemma_predecessors_in_class", "projectives_in_L",
    "proposition_L_C", "pd_class_predicate",
]
