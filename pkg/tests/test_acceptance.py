"""Acceptance criteria 1 to 10, one verdict line per criterion."""
import pytest

from boundquiver.ar import resolve_module
from boundquiver.homology import global_dimension, inj_dim, proj_dim
from boundquiver.modules import projective, simple
from boundquiver.opext import one_point_extension
from boundquiver.parts import audit_almost_hereditary, check_add_Lm, part_L, part_R
from boundquiver.tilting import check_tilting, endomorphism_algebra

import suites
from conftest import ACCEPTANCE, alg, inds

T_FIG = "P4+[4..7]+[4..6]+[4..5]+S4+P3+P2+P1"


def record(k, text, claims):
    """Store the verdict, print it, and fail with the names of false claims."""
    bad = [name for name, ok in claims.items() if not ok]
    ACCEPTANCE[k] = (not bad, text + (f" [failed: {', '.join(bad)}]" if bad else ""))
    print(f"criterion {k}: {'PASS' if not bad else 'FAIL'} {text}")
    assert not bad, bad


def find(I, expr):
    return I.find(resolve_module(I, expr)[0])


def ah(ident, m, n):
    return audit_almost_hereditary(alg(ident), m, n).almost_hereditary


def test_criterion_1_ex1():
    A, I = alg("EX1"), inds("EX1")
    w = find(I, "(1,1,0)")
    rep = audit_almost_hereditary(A, 1, 1)
    record(1, "EX1 gl.dim 2, (1,1,0) has pd = id = 2, audit(1,1) fails Q2 at it", {
        "gldim": global_dimension(A) == 2,
        "pd": I.pd(w) == 2, "id": I.id(w) == 2,
        "Q1": rep.verdict("Q1") == "pass",
        "Q2 witness": rep.verdict("Q2") == "fail" and rep.check("Q2").witnesses == [w],
    })


def test_criterion_2_ex2():
    A, I = alg("EX2(1,1)"), inds("EX2(1,1)")
    record(2, "EX2(1,1) gl.dim 3, pd <= 1 or id <= 1 everywhere, audits (1,2) and (2,1) pass", {
        "gldim": global_dimension(A) == 3,
        "dichotomy": all(I.pd(i) <= 1 or I.id(i) <= 1 for i in range(len(I))),
        "audit12": ah("EX2(1,1)", 1, 2), "audit21": ah("EX2(1,1)", 2, 1),
    })


@pytest.mark.xfail(strict=True, reason="true tau-orbit sizes are [1,1,1,1,5,6,7,8]; "
                   "[4,5,6,7,8] are the figure rows grouped by length")
def test_criterion_3_ex3():
    A, I = alg("EX3"), inds("EX3")
    M = find(I, "[3..6]")
    L1, R1, R2 = part_L(I, 1), part_R(I, 1), part_R(I, 2)
    record(3, "EX3 30 indecomposables, tau-orbit sizes {4,5,6,7,8}, audit(1,2), "
              "M = [3..6], ind = L1 u R2, M outside L1 u R1, T tilting", {
        "count": len(I) == 30,
        "orbit sizes": sorted(len(o) for o in I.orbits()) == [4, 5, 6, 7, 8],
        "audit12": ah("EX3", 1, 2),
        "M dims": (I.pd(M), I.id(M)) == (2, 2),
        "union": L1 | R2 == set(range(len(I))),
        "strict": M not in L1 | R1,
        "tilting": check_tilting(A, resolve_module(I, T_FIG)).ok,
    })


def test_criterion_4_endomorphism():
    A, I = alg("EX3"), inds("EX3")
    B = endomorphism_algebra(A, resolve_module(I, T_FIG)).algebra
    record(4, "EX3 gl.dim (End T)^op = 2", {"gldim": global_dimension(B) == 2})


def test_criterion_5_ex4():
    record(5, "EX4 audits (1,2) and (2,1) pass, 63 indecomposables", {
        "audit12": ah("EX4", 1, 2), "audit21": ah("EX4", 2, 1),
        "count": len(inds("EX4")) == 63,
        "oracle": suites.interval_oracle_ok("EX4"),
    })


def test_criterion_6_ex5():
    B = alg("EX5B")
    ext = one_point_extension(B, simple(B, B.vertex_index("5")))
    A, A2 = ext.algebra, alg("EX5A")
    dv = lambda X: sorted(projective(X, v).dimvec for v in range(X.rank))
    record(6, "EX5 gl.dim B 2, B fails audit(1,1), B[S5] is (2,1)-AH and matches EX5A", {
        "gldim B": global_dimension(B) == 2,
        "B fails": not audit_almost_hereditary(B, 1, 1).almost_hereditary,
        "A audit": audit_almost_hereditary(A, 2, 1).almost_hereditary,
        "projectives": dv(A) == dv(A2),
    })


def test_criterion_7_ex6():
    B = alg("EX6B(2)")
    ext = one_point_extension(B, simple(B, B.vertex_index("5")))
    A = ext.algebra
    S4 = simple(A, A.vertex_index("4"))
    record(7, "EX6(2) B is (2,1)-AH, gl.dim A = gl.dim B = 3, pd S4 = 3, id S4 = 2, A fails", {
        "B audit": audit_almost_hereditary(B, 2, 1).almost_hereditary,
        "gldim": global_dimension(A) == global_dimension(B) == 3,
        "pd S4": proj_dim(S4) == 3, "id S4": inj_dim(S4) == 2,
        "A fails": not audit_almost_hereditary(A, 2, 1).almost_hereditary,
    })


def test_criterion_8_ex7():
    I = inds("EX7(1,2)")
    record(8, "EX7(1,2) audit(1,2) passes and P4 is not in L1", {
        "audit": ah("EX7(1,2)", 1, 2),
        "P4": find(I, "P4") not in part_L(I, 1),
    })


def test_criterion_9_property_suites():
    count, bad = suites.coordinate_lemma(["EX1", "EX7(1,1)", "EX7(1,2)", "EX2(1,1)", "EX5B",
                                          "EX5A", "EX6A(2)", "EX3"])
    B = alg("EX7(1,1)")
    ext = one_point_extension(B, simple(B, B.vertex_index("1")))
    record(9, f"property suites (a) to (j); {count} non-split extensions", {
        "a gl.dim bound": not suites.gldim_bound_violations(),
        "b lemmas": not suites.lemma_violations(),
        "c trisection": not suites.trisection_violations(),
        "d id = pd of dual": not suites.duality_violations(),
        "e coordinate lemma": count >= 100 and not bad,
        "f AR formula": not suites.ar_formula_mismatches("EX7(1,1)")
        and not suites.ar_formula_mismatches("EX1"),
        "g interval oracle": all(suites.interval_oracle_ok(i)
                                 for i in ["EX2(1,1)", "EX3", "EX4", "EX7(1,1)", "EX7(1,2)"]),
        "h pd lemma": not suites.pd_lemma_failures(),
        "i gl.dim of extensions": not suites.gldim_formula_failures(),
        "j extension of EX7(1,1)": audit_almost_hereditary(ext.algebra, 1, 1).almost_hereditary,
    })


def test_criterion_10_conjecture_probe():
    lines = []
    for ident, m, n in suites.AUDITS:
        if n != 1 or not ah(ident, m, 1):
            continue
        rep = check_add_Lm(alg(ident), m)
        lines.append(f"{ident}(m={m}): {rep.check('conjecture').detail}")
    print("\n".join(lines))
    holds = all(s.endswith("holds") for s in lines)
    # informational: recorded but never failing
    ACCEPTANCE[10] = (None, f"conjecture probe on {len(lines)} (m,1)-almost hereditary algebras: "
                            + ("holds on all" if holds else "counterexample found") + "; "
                            + "; ".join(lines))
