import itertools
import json

import numpy as np
import pytest

from boundquiver import cli
from boundquiver.ar import enumerate_indecomposables, resolve_module
from boundquiver.homology import ext_dim, global_dimension, proj_dim
from boundquiver.modules import injective, is_isomorphic, projective, simple
from boundquiver.tilting import (ChainSpec, ChainStep, check_tilting, check_transfer,
                                 endomorphism_algebra, hom_functor, is_quasitilted, is_splitting,
                                 torsion_pair, verify_chain)

from conftest import alg, inds

T_FIG = "P4+[4..7]+[4..6]+[4..5]+S4+P3+P2+P1"


def projectives(A):
    return [projective(A, v) for v in range(A.rank)]


def search_tilting(ident):
    """All basic tilting modules, by brute force over sets of indecomposables."""
    I = inds(ident)
    n = I.algebra.rank
    cand = [i for i in range(len(I)) if proj_dim(I[i]) <= 1]
    out = []
    for S in itertools.combinations(cand, n):
        if all(ext_dim(1, I[a], I[b]) == 0 for a in S for b in S):
            out.append(S)
    return out


@pytest.mark.parametrize("ident", ["EX1", "EX3", "A3R"])
def test_projective_generator(ident):
    A = alg(ident)
    assert check_tilting(A, projectives(A)).ok
    tors, free = torsion_pair(A, projectives(A))
    assert not free
    assert is_splitting(A, projectives(A))[0]


def test_ex1_simple_fails(ex1):
    v = check_tilting(ex1, [simple(ex1, 0), projective(ex1, 1), projective(ex1, 2)])
    assert not v.conditions["pd_at_most_1"]
    assert v.witnesses["pd_at_most_1"] == [(1, 0, 0)]


def test_a2():
    A = alg("A2")
    I = inds("A2")
    T = resolve_module(I, "P1+S1")
    assert check_tilting(A, T).ok
    tors, free = torsion_pair(A, T, I)
    assert [I[i].dimvec for i in free] == [(0, 1)]
    for v in range(A.rank):
        assert I.find(injective(A, v)) in tors
    assert is_splitting(A, T, inds=I)[0]
    B = endomorphism_algebra(A, T).algebra
    assert B.dim == 3 and global_dimension(B) == 1
    rep = check_transfer(A, T, 1, 1)
    assert rep.conclusion == "pass"
    IB = enumerate_indecomposables(B)
    assert all(IB.pd(i) <= 1 for i in range(len(IB)))


def test_trivial_tilt_gives_same_algebra(ex1):
    B = endomorphism_algebra(ex1, projectives(ex1)).algebra
    assert B.dim == ex1.dim
    assert np.array_equal(B.cartan(), ex1.cartan())
    assert global_dimension(B) == global_dimension(ex1)
    rep = check_transfer(ex1, projectives(ex1), 1, 1)
    assert rep.hypotheses["Q2"] is False and rep.conclusion == "n/a"


def test_ex3_figure_module():
    A = alg("EX3")
    I = inds("EX3")
    T = resolve_module(I, T_FIG)
    assert check_tilting(A, T).ok
    split, bad = is_splitting(A, T, inds=I)
    assert not split and bad
    E = endomorphism_algebra(A, T)
    assert global_dimension(E.algebra) == 2
    assert E.algebra.dim == sum(np.array(E.algebra.cartan()).reshape(-1))


def test_ex3_chain_through_endomorphism_algebra():
    A = alg("EX3")
    T = resolve_module(inds("EX3"), T_FIG)
    E = endomorphism_algebra(A, T, name="B")
    B = E.algebra
    IB = enumerate_indecomposables(B)
    assert IB.complete and len(IB) == 99
    assert is_quasitilted(B, IB)[0]
    DT = [hom_functor(E, injective(A, v)) for v in range(A.rank)]
    v = check_tilting(B, DT, "cotilting")
    assert v.ok
    assert is_splitting(B, DT, "cotilting", IB)[0]
    A2 = endomorphism_algebra(B, DT).algebra
    assert global_dimension(A2) == 3
    assert sorted(map(tuple, A2.cartan().tolist())) == sorted(map(tuple, A.cartan().tolist()))
    expr = "+".join(str(X.dimvec).replace(" ", "") for X in DT)
    rep = verify_chain(B, [ChainStep("cotilt", expr)], 2, 1)
    assert rep.ok, rep.failure
    assert rep.final["gldim"] == 3 and rep.final["almost_hereditary"]


def test_hom_functor_of_projective_is_projective():
    A = alg("EX3")
    T = resolve_module(inds("EX3"), T_FIG)
    E = endomorphism_algebra(A, T)
    for i, Ti in enumerate(E.summands):
        assert is_isomorphic(hom_functor(E, Ti), projective(E.algebra, i))


def test_empty_chain_a3r():
    rep = verify_chain(alg("A3R"), [], 1, 1)
    assert rep.ok
    assert len(inds("A3R")) == 5 and global_dimension(alg("A3R")) == 2


def test_identity_tilt_is_not_stair():
    rep = verify_chain(alg("A3R"), [ChainStep("tilt", "P1+P2+P3")], 1, 2)
    assert not rep.ok and "stair" in rep.failure


def test_chain_json_round_trip():
    spec = ChainSpec("A3R", [ChainStep("tilt", "P1+S1+P3")])
    assert ChainSpec.from_json(spec.to_json()) == spec


@pytest.mark.parametrize("ident,count", [("A2", 2), ("PT", 1), ("EX7(1,1)", None),
                                         ("A3R", None), ("EX1", None)])
def test_exhaustive_tilting_search(ident, count):
    A = alg(ident)
    I = inds(ident)
    found = search_tilting(ident)
    if count is not None:
        assert len(found) == count
    assert any(set(S) == {I.find(P) for P in projectives(A)} for S in found)
    for S in found:
        assert check_tilting(A, [I[i] for i in S]).ok


def test_one_step_chains_from_search():
    """Every splitting stair tilt of A3R yields a (1,2)-almost hereditary algebra."""
    I = inds("A3R")
    verdicts = []
    for S in search_tilting("A3R"):
        expr = "+".join(I.names[i].split("/")[0] if not I.names[i].startswith("M")
                        else str(I[i].dimvec).replace(" ", "") for i in S)
        rep = verify_chain(alg("A3R"), [ChainStep("tilt", expr)], 1, 2)
        verdicts.append(rep.ok)
        if rep.ok:
            assert rep.final["gldim"] == 3
        else:
            assert "stair" in rep.failure or "splitting" in rep.failure
    assert len(verdicts) >= 2


def test_cli_tilt_exit_codes(capsys):
    assert cli.run(["tilt", "A2", "--module", "P1+S1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["ok"] and out["splitting"]
    assert cli.run(["tilt", "EX1", "--module", "S1+P2+P3"]) == 1
    assert cli.run(["tilt", "EX1", "--module", "nonsense"]) == 2
