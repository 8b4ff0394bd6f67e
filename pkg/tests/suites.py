"""Property suites shared by the unit tests and the acceptance run."""
import itertools

import numpy as np

from boundquiver import linalg as la
from boundquiver.homology import (ext_dim, extension_from_cocycle, global_dimension, inj_dim,
                                  proj_dim, projective_cover)
from boundquiver.modules import (dual_module, from_spec, hom_matrices, projective, simple,
                                 split_summands, zero_module)
from boundquiver.ar import tau
from boundquiver.opext import check_pd_lemma, one_point_extension
from boundquiver.oracles import interval_modules
from boundquiver.parts import (lemma_hom_vanishing, lemma_predecessors_in_class, trisection)

from conftest import alg, inds

CORPUS = ["EX1", "EX2(1,1)", "EX2(1,2)", "EX3", "EX4", "EX5B", "EX5A", "EX6B(1)", "EX6A(1)",
          "EX6B(2)", "EX6A(2)", "EX7(1,1)", "EX7(1,2)"]
AUDITS = [("EX1", 1, 1), ("EX2(1,1)", 1, 2), ("EX2(1,1)", 2, 1), ("EX2(1,2)", 1, 3),
          ("EX3", 1, 2), ("EX3", 2, 1), ("EX4", 1, 2), ("EX4", 2, 1), ("EX5B", 1, 1),
          ("EX5A", 2, 1), ("EX6B(1)", 1, 1), ("EX6A(1)", 1, 1), ("EX6B(2)", 2, 1),
          ("EX6A(2)", 2, 1), ("EX7(1,1)", 1, 1), ("EX7(1,2)", 1, 2)]
EXTENSIONS = [("EX5B", "5", 1), ("EX6B(1)", "4", 1), ("EX6B(2)", "5", 2)]


def nonsplit_extensions(idents, per_pair=1, seed=7):
    rng = np.random.default_rng(seed)
    for ident in idents:
        I = inds(ident)
        for N, M in itertools.product(I, I):
            d = ext_dim(1, N, M)
            for _ in range(per_pair if d else 0):
                c = rng.integers(0, M.p, d)
                if not c.any():
                    c[0] = 1
                yield ident, N, M, c


def coordinate_lemma(idents, per_pair=2):
    """Count of non-split sequences checked and the list of violations."""
    count, bad = 0, []
    for ident, N, M, c in nonsplit_extensions(idents, per_pair):
        ses = extension_from_cocycle(N, M, c)
        for s in split_summands(ses.middle):
            if not la.matmul(ses.g.matrix, s.inclusion, M.p).any() or \
                    not la.matmul(s.projection, ses.f.matrix, M.p).any():
                bad.append((ident, N.dimvec, M.dimvec))
        count += 1
    return count, bad


def injective_envelope(N):
    P, pi = projective_cover(dual_module(N))
    return dual_module(P.module), pi.T % N.p


def ar_formula_mismatches(ident):
    """Pairs where dim Ext^1(M,N) differs from dim Hom(N, tau M) modulo injectives."""
    I = inds(ident)
    p = I.algebra.p
    bad = []
    for M, N in itertools.product(I, I):
        tM = tau(M)
        lhs = ext_dim(1, M, N)
        if tM.dim == 0:
            if lhs:
                bad.append((M.dimvec, N.dimvec))
            continue
        E, iota = injective_envelope(N)
        through = [la.matmul(h, iota, p).reshape(-1) for h in hom_matrices(E, tM)]
        r = la.rank(np.array(through).T, p) if through else 0
        if lhs != hom_matrices(N, tM).shape[0] - r:
            bad.append((M.dimvec, N.dimvec))
    return bad


def interval_oracle_ok(ident):
    A, I = alg(ident), inds(ident)
    intervals = interval_modules(A.spec)
    found = {I.find(from_spec(A, m)) for m in intervals}
    return len(intervals) == len(I) and None not in found and len(found) == len(I)


def gldim_bound_violations():
    out = []
    for ident, m, n in AUDITS:
        I = inds(ident)
        if all(I.pd(i) <= m or I.id(i) <= n for i in range(len(I))):
            if global_dimension(I.algebra) > m + n + 1:
                out.append((ident, m, n))
    return out


def lemma_violations():
    out = []
    for ident, m, n in AUDITS:
        I = inds(ident)
        for mm in range(1, m + 1):
            if lemma_hom_vanishing(I, mm, n):
                out.append((ident, mm, n, "hom"))
            if lemma_predecessors_in_class(I, mm, n):
                out.append((ident, mm, n, "pred"))
    return out


def trisection_violations():
    return [(i, m, n) for i, m, n in AUDITS if not trisection(inds(i), m, n).cross_hom_zero]


def duality_violations():
    return [(ident, M.dimvec) for ident in CORPUS for M in inds(ident)
            if inj_dim(M) != proj_dim(dual_module(M))]


def pd_lemma_failures():
    out = []
    for bid, v, m in EXTENSIONS:
        B = alg(bid)
        rep = check_pd_lemma(one_point_extension(B, simple(B, B.vertex_index(v))), m)
        if not rep.ok:
            out.append((bid, m))
    return out


def gldim_formula_failures():
    out = []
    for bid in ["EX5B", "EX6B(1)", "EX6B(2)", "EX7(1,1)", "EX7(1,2)", "EX1", "EX2(1,1)"]:
        B = alg(bid)
        mods = [simple(B, v) for v in range(B.rank)] + [projective(B, v) for v in range(B.rank)]
        for M in mods + [zero_module(B)]:
            A = one_point_extension(B, M).algebra
            pdM = proj_dim(M) if M.dim else -1
            if global_dimension(A) != max(global_dimension(B), pdM + 1):
                out.append((bid, M.dimvec))
    return out
