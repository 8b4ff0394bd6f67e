"""Built-in example algebras as DSL text.

Interval notation ``[a..b]`` below means the uniserial module supported on the
vertices from ``a`` to ``b`` along the arrows.
"""
from __future__ import annotations

import re
from functools import lru_cache

from .algebra import BasicAlgebra, build_algebra
from .dsl import parse_spec


def _linear(name: str, order: list[int], relations: list[list[int]], p: int) -> str:
    """Quiver ``order[0] -> order[1] -> ...`` with monomial relations given as vertex walks."""
    lines = [f"algebra {name} field {p}", "vertices " + ",".join(str(v) for v in sorted(order))]
    for a, b in zip(order, order[1:]):
        lines.append(f"arrow a{a}_{b} : {a} -> {b}")
    for walk in relations:
        lines.append("rel " + "*".join(f"a{a}_{b}" for a, b in zip(walk, walk[1:])))
    return "\n".join(lines) + "\n"


def ex1(p: int = 101) -> str:
    return (f"algebra EX1 field {p}\n"
            "vertices 1..3\n"
            "arrow gamma : 1 -> 2\n"
            "arrow alpha : 1 -> 3\n"
            "arrow beta : 3 -> 2\n"
            "# beta after alpha vanishes\n"
            "rel alpha*beta\n")


def ex2(m: int, n: int, p: int = 101) -> str:
    order = list(range(1, m + n + 3))
    return _linear(f"EX2_{m}_{n}", order, [order[i:i + 3] for i in range(len(order) - 2)], p)


def ex3(p: int = 101) -> str:
    order = list(range(1, 9))
    return _linear("EX3", order, [order[i:i + 6] for i in range(3)], p)


def ex4(p: int = 101) -> str:
    order = list(range(1, 13))
    return _linear("EX4", order, [order[i:i + 8] for i in range(5)], p)


def ex5b(p: int = 101) -> str:
    return _linear("EX5B", [5, 4, 3, 2, 1], [[5, 4, 3], [3, 2, 1]], p)


def ex5a(p: int = 101) -> str:
    return _linear("EX5A", [6, 5, 4, 3, 2, 1], [[6, 5, 4], [5, 4, 3], [3, 2, 1]], p)


def ex6b(m: int, p: int = 101) -> str:
    # length-two relations starting at j for j in 3..m+2
    order = list(range(m + 3, 0, -1))
    return _linear(f"EX6B_{m}", order, [[j, j - 1, j - 2] for j in range(m + 2, 2, -1)], p)


def ex6a(m: int, p: int = 101) -> str:
    order = list(range(m + 4, 0, -1))
    rels = [[m + 4, m + 3, m + 2]] + [[j, j - 1, j - 2] for j in range(m + 2, 2, -1)]
    return _linear(f"EX6A_{m}", order, rels, p)


def ex7(m: int, n: int, p: int = 101) -> str:
    order = list(range(m + n + 1, 0, -1))
    return _linear(f"EX7_{m}_{n}", order, [order[i:i + 3] for i in range(len(order) - 2)], p)


def a2(p: int = 101) -> str:
    return _linear("A2", [1, 2], [], p)


def a3_rel(p: int = 101) -> str:
    return _linear("A3R", [1, 2, 3], [[1, 2, 3]], p)


def point(p: int = 101) -> str:
    return f"algebra PT field {p}\nvertices 1\n"


_PARAM = re.compile(r"^(EX[1-7][AB]?|A2|A3R|PT)(?:\((\d+)(?:,(\d+))?\))?$")
_BUILDERS = {
    "EX1": (ex1, 0), "EX2": (ex2, 2), "EX3": (ex3, 0), "EX4": (ex4, 0),
    "EX5B": (ex5b, 0), "EX5A": (ex5a, 0), "EX6B": (ex6b, 1), "EX6A": (ex6a, 1),
    "EX7": (ex7, 2), "A2": (a2, 0), "A3R": (a3_rel, 0), "PT": (point, 0),
}
DEFAULT_PARAMS = {"EX2": (1, 1), "EX6B": (2,), "EX6A": (2,), "EX7": (1, 1)}


def source(ident: str, p: int = 101) -> str:
    """DSL text for an identifier such as ``EX3``, ``EX2(1,1)`` or ``EX6A(2)``."""
    m = _PARAM.match(ident.replace(" ", "").upper())
    if not m:
        raise KeyError(f"unknown corpus id {ident!r}")
    key = m.group(1)
    if key not in _BUILDERS:
        raise KeyError(f"unknown corpus id {ident!r}")
    fn, arity = _BUILDERS[key]
    args = tuple(int(g) for g in m.groups()[1:] if g is not None)
    if not args:
        args = DEFAULT_PARAMS.get(key, ())
    if len(args) != arity:
        raise KeyError(f"{key} takes {arity} parameter(s)")
    return fn(*args, p=p)


def is_corpus_id(ident: str) -> bool:
    try:
        source(ident)
    except KeyError:
        return False
    return True


@lru_cache(maxsize=None)
def algebra(ident: str, p: int = 101) -> BasicAlgebra:
    return build_algebra(parse_spec(source(ident, p)))


# ------------------------------------------------------------ expected facts

from dataclasses import dataclass, field  # noqa: E402
from typing import Any, Callable  # noqa: E402


@dataclass
class Fact:
    """A machine-checkable claim; ``check`` returns the observed value."""

    id: str
    description: str
    provenance: str  # PAPER, DERIVED or TRIVIAL
    expected: Any
    check: Callable[[], Any]
    quote: str = ""


@dataclass
class CorpusEntry:
    id: str
    algebras: list[str]
    facts: list[Fact] = field(default_factory=list)


def _lazy():
    # deferred imports keep this module importable from the core modules
    from . import ar, homology, modules, opext, parts, tilting
    return ar, homology, modules, opext, parts, tilting


def _inds(ident):
    ar = _lazy()[0]
    return ar.enumerate_indecomposables(algebra(ident))


def _mod(ident, expr):
    ar = _lazy()[0]
    (M,) = ar.resolve_module(_inds(ident), expr)
    return M


def _audit(ident, m, n):
    return _lazy()[4].audit_almost_hereditary(algebra(ident), m, n)


def _gd(ident):
    return _lazy()[1].global_dimension(algebra(ident))


def _audit_summary(ident, m, n):
    r = _audit(ident, m, n)
    return {"Q1": r.verdict("Q1"), "Q2": r.verdict("Q2")}


def _q2_witness_dimvecs(ident, m, n):
    r = _audit(ident, m, n)
    inds = _inds(ident)
    return [list(inds[i].dimvec) for i in r.check("Q2").witnesses]


def _pd_id(ident, expr):
    h = _lazy()[1]
    M = _mod(ident, expr)
    return [h.proj_dim(M), h.inj_dim(M)]


EX3_T = "P4+[4..7]+[4..6]+[4..5]+S4+P3+P2+P1"


def _ex3_tilting_ok():
    t = _lazy()[5]
    inds = _inds("EX3")
    return t.check_tilting(algebra("EX3"), _lazy()[0].resolve_module(inds, EX3_T)).ok


def _ex3_endo_gldim():
    ar, h, *_rest = _lazy()
    t = _lazy()[5]
    T = ar.resolve_module(_inds("EX3"), EX3_T)
    return h.global_dimension(t.endomorphism_algebra(algebra("EX3"), T).algebra)


def _ex3_outside_L1_R1():
    p = _lazy()[4]
    inds = _inds("EX3")
    i = inds.find(_mod("EX3", "[3..6]"))
    return i not in (p.part_L(inds, 1) | p.part_R(inds, 1))


def _union_is_everything(ident, m, n):
    p = _lazy()[4]
    inds = _inds(ident)
    return len(p.part_L(inds, m) | p.part_R(inds, n)) == len(inds)


def _extension(bid, vertex):
    mods, opext = _lazy()[2], _lazy()[3]
    B = algebra(bid)
    key = ("opext", vertex)
    if key not in B.cache:
        B.cache[key] = opext.one_point_extension(B, mods.simple(B, B.vertex_index(vertex)))
    return B.cache[key]


def _ext_audit(bid, vertex, m, n):
    p = _lazy()[4]
    return p.audit_almost_hereditary(_extension(bid, vertex).algebra, m, n).almost_hereditary


def _projective_dimvecs(A):
    mods = _lazy()[2]
    return [list(mods.projective(A, v).dimvec) for v in range(A.rank)]


def _ext_matches(bid, vertex, aid):
    h = _lazy()[1]
    A = _extension(bid, vertex).algebra
    P = algebra(aid)
    return (A.dim == P.dim and _projective_dimvecs(A) == _projective_dimvecs(P)
            and h.global_dimension(A) == h.global_dimension(P))


def _ext_pd_id_simple(bid, vertex, s):
    mods, h = _lazy()[2], _lazy()[1]
    A = _extension(bid, vertex).algebra
    S = mods.simple(A, A.vertex_index(s))
    return [h.proj_dim(S), h.inj_dim(S)]


def _ex7_P_not_in_L(m, n):
    p = _lazy()[4]
    ident = f"EX7({m},{n})"
    inds = _inds(ident)
    top = str(m + n + 1)
    return inds.find(_mod(ident, f"P{top}")) not in p.part_L(inds, m)


def _iso(ident, e1, e2):
    mods = _lazy()[2]
    return mods.is_isomorphic(_mod(ident, e1), _mod(ident, e2))


def _rad_P1_ex1():
    mods = _lazy()[2]
    A = algebra("EX1")
    P = mods.projective(A, 0)
    rad = mods.submodule(P, P.radical_basis)[0]
    return sorted(list(X.dimvec) for X, _ in mods.decompose(rad))


def _ext2_ex1():
    mods, h = _lazy()[2], _lazy()[1]
    A = algebra("EX1")
    return h.ext_dim(2, mods.simple(A, 0), mods.simple(A, 1))


def _tau(ident, expr):
    ar = _lazy()[0]
    return list(ar.tau(_mod(ident, expr)).dimvec)


def _projective_simple_extension():
    return _ext_audit("EX7(1,1)", "1", 1, 1)


def _count(ident):
    return len(_inds(ident))


def _dim(ident):
    return algebra(ident).dim


def _entries() -> list[CorpusEntry]:
    E = []
    q_ex1 = "projective and injective dimension equal to two"
    E.append(CorpusEntry("EX1", ["EX1"], [
        Fact("EX1.dim", "dimension 6", "DERIVED", 6, lambda: _dim("EX1")),
        Fact("EX1.gldim", "global dimension 2", "PAPER", 2, lambda: _gd("EX1"),
             "while global dimension of A is two"),
        Fact("EX1.pd_id", "module (1,1,0) has pd 2 and id 2", "PAPER", [2, 2],
             lambda: _pd_id("EX1", "(1,1,0)"), q_ex1),
        Fact("EX1.audit", "audit(1,1): Q1 passes, Q2 fails", "PAPER", {"Q1": "pass", "Q2": "fail"},
             lambda: _audit_summary("EX1", 1, 1), q_ex1),
        Fact("EX1.witness", "Q2 witness is (1,1,0)", "PAPER", [[1, 1, 0]],
             lambda: _q2_witness_dimvecs("EX1", 1, 1), q_ex1),
        Fact("EX1.radP1", "rad P(1) = S2 + S3", "DERIVED", [[0, 0, 1], [0, 1, 0]], _rad_P1_ex1),
        Fact("EX1.ext2", "dim Ext^2(S1, S2) = 1", "DERIVED", 1, _ext2_ex1),
    ]))
    q2 = "gd A = m+n+1"
    E.append(CorpusEntry("EX2(1,1)", ["EX2(1,1)"], [
        Fact("EX2.gldim", "global dimension 3", "PAPER", 3, lambda: _gd("EX2(1,1)"), q2),
        Fact("EX2.Q2", "pd <= 1 or id <= 1 everywhere", "PAPER", "pass",
             lambda: _audit("EX2(1,1)", 1, 1).verdict("Q2"),
             "each indecomposable A-module has projective dimension at most m or injective dimension at most n"),
        Fact("EX2.audit12", "(1,2)-almost hereditary", "PAPER", True,
             lambda: _audit("EX2(1,1)", 1, 2).almost_hereditary, "for all positive integers a,b such that"),
        Fact("EX2.audit21", "(2,1)-almost hereditary", "PAPER", True,
             lambda: _audit("EX2(1,1)", 2, 1).almost_hereditary, "for all positive integers a,b such that"),
    ]))
    E.append(CorpusEntry("EX3", ["EX3"], [
        Fact("EX3.dim", "dimension 30", "DERIVED", 30, lambda: _dim("EX3")),
        Fact("EX3.count", "30 indecomposables", "PAPER", 30, lambda: _count("EX3"),
             "in the illustration below"),
        Fact("EX3.audit12", "(1,2)-almost hereditary", "PAPER", True,
             lambda: _audit("EX3", 1, 2).almost_hereditary, "A is also (1,2)-almost hereditary"),
        Fact("EX3.M", "M = [3..6] has pd 2 and id 2", "PAPER", [2, 2], lambda: _pd_id("EX3", "[3..6]"),
             "M has projective and injective dimensions equal to 2"),
        Fact("EX3.union", "ind A = L^1 u R^2", "PAPER", True, lambda: _union_is_everything("EX3", 1, 2),
             "Then ind A = L^m_A u R^n_A"),
        Fact("EX3.strict", "M outside L^1 u R^1", "PAPER", True, _ex3_outside_L1_R1,
             "since M has projective and injective dimensions equal to 2"),
        Fact("EX3.tilting", "T is a tilting module", "PAPER", True, _ex3_tilting_ok,
             "Consider the tilting A-module T"),
        Fact("EX3.endo", "gl.dim (End T)^op = 2", "DERIVED", 2, _ex3_endo_gldim),
        Fact("EX3.tau", "tau [3..6] = [4..7]", "DERIVED", [0, 0, 0, 1, 1, 1, 1, 0], lambda: _tau("EX3", "[3..6]")),
    ]))
    q4 = "A is (1,2)- and (2,1)-almost hereditary"
    E.append(CorpusEntry("EX4", ["EX4"], [
        Fact("EX4.count", "63 indecomposables", "DERIVED", 63, lambda: _count("EX4")),
        Fact("EX4.audit12", "(1,2)-almost hereditary", "PAPER", True,
             lambda: _audit("EX4", 1, 2).almost_hereditary, q4),
        Fact("EX4.audit21", "(2,1)-almost hereditary", "PAPER", True,
             lambda: _audit("EX4", 2, 1).almost_hereditary, q4),
    ]))
    E.append(CorpusEntry("EX5", ["EX5B", "EX5A"], [
        Fact("EX5.gldimB", "gl.dim B = 2", "PAPER", 2, lambda: _gd("EX5B"), "which has gd B = 2"),
        Fact("EX5.B11", "B is not (1,1)-almost hereditary", "PAPER", False,
             lambda: _audit("EX5B", 1, 1).almost_hereditary, "but is not (1,1)-almost hereditary"),
        Fact("EX5.A21", "B[S5] is (2,1)-almost hereditary", "PAPER", True,
             lambda: _ext_audit("EX5B", "5", 2, 1), "we obtain the (2,1)-almost hereditary algebra A = B[M]"),
        Fact("EX5.match", "B[S5] matches the parsed extension", "DERIVED", True,
             lambda: _ext_matches("EX5B", "5", "EX5A")),
        Fact("EX5.dimA", "dimension of the extension 12", "DERIVED", 12, lambda: _dim("EX5A")),
    ]))
    for m in (1, 2):
        b, a = f"EX6B({m})", f"EX6A({m})"
        top = str(m + 3)
        s = str(m + 2)
        qn = "since pd_A S_{m+2} = m+1 and di_A S_{m+2} = 2"
        E.append(CorpusEntry(f"EX6({m})", [b, a], [
            Fact(f"EX6({m}).B", f"B is ({m},1)-almost hereditary", "PAPER", True,
                 lambda b=b, m=m: _audit(b, m, 1).almost_hereditary, "It can be easily checked that B is (m,1)-almost hereditary"),
            Fact(f"EX6({m}).gldim", "gl.dim A = gl.dim B", "PAPER", True,
                 lambda b=b, top=top: _lazy()[1].global_dimension(_extension(b, top).algebra) == _gd(b),
                 "is such that gd A = gd B"),
            Fact(f"EX6({m}).S", f"pd and id of S{s} over A", "PAPER", [m + 1, 2],
                 lambda b=b, top=top, s=s: _ext_pd_id_simple(b, top, s), qn),
            Fact(f"EX6({m}).A", f"A is not ({m},1)-almost hereditary", "PAPER", False,
                 lambda b=b, top=top, m=m: _ext_audit(b, top, m, 1), "but it is not (m,1)-almost hereditary"),
            Fact(f"EX6({m}).match", "B[S] matches the parsed extension", "DERIVED", True,
                 lambda b=b, top=top, a=a: _ext_matches(b, top, a)),
        ]))
    E.append(CorpusEntry("EX7(1,1)", ["EX7(1,1)"], [
        Fact("EX7(1,1).count", "5 indecomposables", "DERIVED", 5, lambda: _count("EX7(1,1)")),
        Fact("EX7(1,1).iso", "I(2) = P(3)", "DERIVED", True, lambda: _iso("EX7(1,1)", "I2", "P3")),
        Fact("EX7(1,1).cor", "B[S1] is (1,1)-almost hereditary", "DERIVED", True, _projective_simple_extension),
    ]))
    E.append(CorpusEntry("EX7(1,2)", ["EX7(1,2)"], [
        Fact("EX7(1,2).count", "7 indecomposables", "DERIVED", 7, lambda: _count("EX7(1,2)")),
        Fact("EX7(1,2).audit", "(1,2)-almost hereditary", "PAPER", True,
             lambda: _audit("EX7(1,2)", 1, 2).almost_hereditary, "Then A is (m,n)-almost hereditary"),
        Fact("EX7(1,2).P4", "P4 not in L^1", "PAPER", True, lambda: _ex7_P_not_in_L(1, 2),
             "Then A is (m,n)-almost hereditary and P_{m+n+1} not in L_A^m"),
    ]))
    return E


ENTRIES = _entries()


@dataclass
class FactResult:
    entry: str
    fact: Fact
    observed: Any
    ok: bool
    error: str = ""


def run_corpus(filter: str | None = None, entries: list[CorpusEntry] | None = None) -> list[FactResult]:
    """Evaluate every expected fact of the entries whose id contains ``filter``."""
    out = []
    for entry in sorted(entries if entries is not None else ENTRIES, key=lambda e: e.id):
        if filter and filter.upper() not in entry.id.upper():
            continue
        for fact in entry.facts:
            try:
                obs = fact.check()
                out.append(FactResult(entry.id, fact, obs, obs == fact.expected))
            except Exception as exc:  # reported as a failing fact
                out.append(FactResult(entry.id, fact, None, False, f"{type(exc).__name__}: {exc}"))
    return out
