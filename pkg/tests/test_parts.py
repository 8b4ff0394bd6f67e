import json

import pytest

from boundquiver.ar import resolve_module
from boundquiver.homology import global_dimension
from boundquiver.parts import (audit_almost_hereditary, check_add_Lm, digraph, lemma_hom_vanishing,
                               lemma_predecessors_in_class, part_L, part_R, pd_class_predicate,
                               proposition_L_C, trisection)

from conftest import alg, inds

AUDITS = [("EX1", 1, 1), ("EX2(1,1)", 1, 2), ("EX2(1,1)", 2, 1), ("EX3", 1, 2), ("EX3", 2, 1),
          ("EX4", 1, 2), ("EX4", 2, 1), ("EX5B", 1, 1), ("EX5A", 2, 1), ("EX6B(1)", 1, 1),
          ("EX6A(1)", 1, 1), ("EX6B(2)", 2, 1), ("EX6A(2)", 2, 1), ("EX7(1,1)", 1, 1),
          ("EX7(1,2)", 1, 2), ("A2", 1, 1), ("A3R", 1, 1)]


def idx(I, expr):
    return I.find(resolve_module(I, expr)[0])


def test_predecessors_a2():
    I = inds("A2")
    G = digraph(I)
    # S2 -> P1 -> S1 are the only nonzero maps
    S1, S2, P1 = idx(I, "S1"), idx(I, "S2"), idx(I, "P1")
    assert G.predecessors(S2) == {S2}
    assert G.predecessors(P1) == {P1, S2}
    assert G.predecessors(S1) == {S1, P1, S2}


def test_predecessors_ex7():
    I = inds("EX7(1,2)")
    P4 = idx(I, "P4")
    pred = digraph(I).predecessors(P4)
    assert len(pred) == 6 and idx(I, "S4") not in pred


def test_reflexive():
    I = inds("EX3")
    G = digraph(I)
    assert all(i in G.predecessors(i) and i in G.successors(i) for i in range(len(I)))


def test_left_part_examples():
    I = inds("EX7(1,2)")
    assert idx(I, "P4") not in part_L(I, 1)
    I = inds("A2")
    assert part_L(I, 1) == set(range(3))
    I = inds("EX3")
    M = idx(I, "[3..6]")
    assert M not in part_L(I, 1)
    assert M in part_R(I, 2)
    assert M not in part_R(I, 1)


def test_right_part_point():
    I = inds("PT")
    assert part_R(I, 0) == {0} and part_L(I, 0) == {0}


def test_trisection_a2():
    I = inds("A2")
    t = trisection(I, 1, 1)
    assert not t.left and not t.right and t.middle == set(range(3))


def test_trisection_ex3():
    I = inds("EX3")
    t = trisection(I, 1, 2)
    assert len(t.left | t.middle | t.right) == 30 and not t.outside and t.cross_hom_zero
    t = trisection(I, 1, 1)
    assert idx(I, "[3..6]") in t.outside


def test_audit_ex1():
    rep = audit_almost_hereditary(alg("EX1"), 1, 1)
    assert rep.verdict("Q1") == "pass" and rep.verdict("Q2") == "fail"
    I = inds("EX1")
    assert [I[i].dimvec for i in rep.check("Q2").witnesses] == [(1, 1, 0)]
    assert not rep.ok


def test_audit_ex6a():
    A = alg("EX6A(2)")
    rep = audit_almost_hereditary(A, 2, 1)
    assert rep.verdict("Q2") == "fail"
    I = inds("EX6A(2)")
    (w,) = rep.check("Q2").witnesses
    assert I[w].dimvec == tuple(int(v == "4") for v in A.vertices)
    assert (I.pd(w), I.id(w)) == (3, 2)


@pytest.mark.parametrize("ident,m,n", [a for a in AUDITS if a[0] not in ("EX1", "EX5B", "EX6A(1)", "EX6A(2)", "A2", "A3R")])
def test_audits_pass(ident, m, n):
    rep = audit_almost_hereditary(alg(ident), m, n)
    assert rep.almost_hereditary and rep.ok


def test_audit_json_schema():
    rep = audit_almost_hereditary(alg("EX3"), 1, 2)
    d = json.loads(rep.to_json())
    assert set(d) == {"algebra", "params", "indecomposables", "checks", "assumption"}
    assert len(d["indecomposables"]) == 30
    assert {c["name"] for c in d["checks"]} >= {"Q1", "Q2", "trisection"}
    assert rep.to_json() == audit_almost_hereditary(alg("EX3"), 1, 2).to_json()


def test_add_Lm():
    rep = check_add_Lm(alg("EX7(1,2)"), 1)
    assert rep.verdict("A_in_add_Lm") == "info"
    I = inds("EX7(1,2)")
    assert idx(I, "P4") in rep.check("A_in_add_Lm").witnesses
    rep = check_add_Lm(alg("A2"), 1)
    assert rep.verdict("A_in_add_Lm") == "pass" and rep.ok
    rep = check_add_Lm(alg("EX6B(2)"), 2)
    assert rep.check("conjecture").detail == "holds"


@pytest.mark.parametrize("ident,m,n", AUDITS)
def test_lemma_suites(ident, m, n):
    I = inds(ident)
    gd = global_dimension(I.algebra)
    q2 = all(I.pd(i) <= m or I.id(i) <= n for i in range(len(I)))
    if q2:
        assert gd <= m + n + 1
    for mm in range(1, m + 1):
        assert lemma_hom_vanishing(I, mm, n) in (None, [])
        assert lemma_predecessors_in_class(I, mm, n) in (None, [])
    assert trisection(I, m, n).cross_hom_zero
    verdict, _ = proposition_L_C(I, pd_class_predicate(I, m), n)
    assert verdict in ("pass", "n/a")
