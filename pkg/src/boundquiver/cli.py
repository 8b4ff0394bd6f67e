"""Command-line front end.

Exit codes: 0 success, 1 property violation, 2 input error, 3 resource cap.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import ar, corpus, homology, modules, opext, parts, tilting
from .algebra import AdmissibilityError, BasicAlgebra, build_algebra
from .dsl import DSLError, parse_spec


DEFAULT_SEED = modules.DEFAULT_SEED
DEFAULT_MAX_MODULES = ar.DEFAULT_MAX_MODULES
DEFAULT_MAX_DIM = ar.DEFAULT_MAX_DIM


class InputError(Exception):
    pass


def _num(x):
    if x == math.inf:
        return "inf"
    return int(x) if isinstance(x, (int, float)) else x


def _default(o):
    if isinstance(o, float) and o == math.inf:
        return "inf"
    if isinstance(o, set):
        return sorted(o)
    if hasattr(o, "item"):
        return o.item()
    raise TypeError(type(o).__name__)


def _dump(obj) -> str:
    def fix(x):
        if isinstance(x, float) and x == math.inf:
            return "inf"
        if isinstance(x, dict):
            return {k: fix(v) for k, v in x.items()}
        if isinstance(x, (list, tuple)):
            return [fix(v) for v in x]
        return x
    return json.dumps(fix(obj), indent=2, default=_default)


def load_algebra(ref: str, p: int) -> BasicAlgebra:
    """A corpus id such as ``EX2(1,1)`` or a path to a DSL file."""
    if os.path.exists(ref):
        with open(ref) as fh:
            return build_algebra(parse_spec(fh.read(), default_field=p))
    try:
        return corpus.algebra(ref, p)
    except KeyError as exc:
        raise InputError(f"{ref!r} is neither a file nor a corpus id ({exc.args[0]})") from None


def load_module(alg: BasicAlgebra, ref: str) -> list[modules.Module]:
    """Summands named by an expression, or the modules of a module file."""
    if os.path.exists(ref):
        if alg.spec is None:
            raise InputError("module files need an algebra given by a quiver")
        with open(ref) as fh:
            spec = parse_spec(fh.read(), base=alg.spec)
        return [modules.from_spec(alg, m) for m in spec.modules.values()]
    return ar.resolve_module(ar.enumerate_indecomposables(alg), ref)


def _single(mods: list[modules.Module]) -> modules.Module:
    return mods[0] if len(mods) == 1 else modules.direct_sum(mods)[0]


# ---------------------------------------------------------------- commands

def cmd_build(args, out) -> int:
    A = load_algebra(args.algebra, args.field)
    A.check()
    info = {"id": A.name, "p": A.p, "dim": A.dim, "vertices": A.vertices,
            "basis": A.labels, "cartan": A.cartan().tolist()}
    if args.json:
        out.write(_dump(info) + "\n")
    else:
        out.write(f"{A.name} over GF({A.p}): dim {A.dim}, vertices {', '.join(A.vertices)}\n")
        out.write("basis: " + " ".join(A.labels) + "\n")
    return 0


def cmd_indec(args, out) -> int:
    A = load_algebra(args.algebra, args.field)
    inds = ar.enumerate_indecomposables(A)
    if args.dot:
        out.write(ar.ar_quiver_dot(inds))
        return 0 if inds.complete else 1
    rows = [{"id": inds.names[i], "dimvec": list(M.dimvec), "pd": _num(inds.pd(i)),
             "injdim": _num(inds.id(i))} for i, M in enumerate(inds)]
    if args.json:
        out.write(_dump({"algebra": A.name, "complete": inds.complete, "problems": inds.problems,
                         "assumption": inds.assumption, "indecomposables": rows}) + "\n")
    else:
        for r in rows:
            out.write(f"{r['id']:<12} {str(tuple(r['dimvec'])):<28} pd={r['pd']} id={r['injdim']}\n")
        if not inds.complete:
            out.write("partial: " + "; ".join(inds.problems) + "\n")
    return 0 if inds.complete else 1


def cmd_audit(args, out) -> int:
    A = load_algebra(args.algebra, args.field)
    rep = parts.audit_almost_hereditary(A, args.m, args.n)
    if args.json:
        out.write(rep.to_json() + "\n")
    else:
        inds = ar.enumerate_indecomposables(A)
        out.write(f"{A.name}: gl.dim {rep.algebra['gldim']}, (m,n) = ({args.m},{args.n})\n")
        for c in rep.checks:
            wit = ", ".join(f"{inds.names[i]} {inds[i].dimvec}" for i in c.witnesses)
            out.write(f"  {c.name:<16} {c.verdict}" + (f"  witness: {wit}" if wit else "") + "\n")
    return 0 if rep.ok else 1


def cmd_parts(args, out) -> int:
    A = load_algebra(args.algebra, args.field)
    inds = ar.enumerate_indecomposables(A)
    tri = parts.trisection(inds, args.m, args.n)
    names = lambda S: [inds.names[i] for i in sorted(S)]
    info = {"L_minus_R": names(tri.left), "L_and_R": names(tri.middle),
            "R_minus_L": names(tri.right), "outside": names(tri.outside),
            "cross_hom_zero": tri.cross_hom_zero}
    if args.json:
        out.write(_dump(info) + "\n")
    else:
        for k, v in info.items():
            out.write(f"{k}: {v}\n")
    return 0 if tri.cross_hom_zero else 1


def cmd_homdim(args, out) -> int:
    A = load_algebra(args.algebra, args.field)
    info = {"gldim": _num(homology.global_dimension(A))}
    if args.module:
        M = _single(load_module(A, args.module))
        info.update({"module": args.module, "dimvec": list(M.dimvec),
                     "pd": _num(homology.proj_dim(M)), "injdim": _num(homology.inj_dim(M))})
    else:
        info["simples"] = [{"vertex": v, "pd": _num(homology.proj_dim(modules.simple(A, i))),
                            "injdim": _num(homology.inj_dim(modules.simple(A, i)))}
                           for i, v in enumerate(A.vertices)]
    if args.json:
        out.write(_dump(info) + "\n")
    else:
        for k, v in info.items():
            out.write(f"{k}: {v}\n")
    return 0


def cmd_tilt(args, out) -> int:
    A = load_algebra(args.algebra, args.field)
    T = load_module(A, args.module)
    verdict = tilting.check_tilting(A, T, args.kind)
    info = verdict.to_dict()
    if verdict.ok:
        split, wit = tilting.is_splitting(A, T, args.kind)
        B = tilting.endomorphism_algebra(A, T).algebra
        g0, g1 = homology.global_dimension(A), homology.global_dimension(B)
        info.update({"splitting": split, "gldim_before": _num(g0), "gldim_after": _num(g1),
                     "stair": g0 < g1})
        if args.m is not None and args.n is not None:
            rep = tilting.check_transfer(A, T, args.m, args.n, args.kind)
            info["transfer"] = {"hypotheses": rep.hypotheses, "conclusion": rep.conclusion,
                                "witnesses": rep.witnesses, **rep.extra}
    out.write(_dump(info) + "\n")
    bad = not verdict.ok or info.get("transfer", {}).get("conclusion") == "fail"
    return 1 if bad else 0


def cmd_chain(args, out) -> int:
    try:
        with open(args.chain) as fh:
            spec = tilting.ChainSpec.from_json(fh.read())
    except (OSError, ValueError, KeyError) as exc:
        raise InputError(f"cannot read chain file: {exc}") from None
    base = load_algebra(spec.base, args.field)
    rep = tilting.verify_chain(base, spec.steps, args.m, args.n)
    out.write(_dump(rep.to_dict()) + "\n")
    return 0 if rep.ok else 1


def cmd_opext(args, out) -> int:
    B = load_algebra(args.algebra, args.field)
    M = _single(load_module(B, args.module))
    ext = opext.one_point_extension(B, M)
    if args.emit:
        out.write(opext.emit(ext) + ("\n" if not opext.emit(ext).endswith("\n") else ""))
        return 0
    lemma = opext.check_pd_lemma(ext, args.m)
    thms = opext.check_opext_theorems(ext, args.m)
    info = {"algebra": ext.algebra.name, "dim": ext.algebra.dim,
            "gldim": _num(homology.global_dimension(ext.algebra)),
            "pd_lemma": {"hypothesis": lemma.hypothesis, "note": lemma.note,
                         "rows": [r.__dict__ for r in lemma.rows]},
            "checks": thms.checks, "details": thms.details}
    out.write(_dump(info) + "\n")
    lemma_bad = lemma.hypothesis and not lemma.ok
    return 1 if lemma_bad or not thms.ok else 0


def cmd_corpus(args, out) -> int:
    results = corpus.run_corpus(args.filter)
    failed = [r for r in results if not r.ok]
    if args.json:
        out.write(_dump([{"entry": r.entry, "fact": r.fact.id, "provenance": r.fact.provenance,
                          "ok": r.ok, "observed": r.observed, "error": r.error}
                         for r in results]) + "\n")
    else:
        for r in results:
            mark = "ok  " if r.ok else "FAIL"
            extra = "" if r.ok else f"  expected {r.fact.expected!r}, observed {r.observed!r} {r.error}"
            out.write(f"{mark} {r.fact.id:<20} [{r.fact.provenance}] {r.fact.description}{extra}\n")
        out.write(f"{len(results) - len(failed)}/{len(results)} facts verified\n")
    for r in failed:
        sys.stderr.write(f"failed fact: {r.fact.id}\n")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="boundquiver", description=__doc__.splitlines()[0],
                                 allow_abbrev=False)
    ap.add_argument("--field", type=int, default=101, help="prime p for GF(p) (default 101)")
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--max-modules", type=int, default=DEFAULT_MAX_MODULES)
    ap.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM)
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    ap.add_argument("--dot", action="store_true", help="AR quiver as DOT (indec)")
    sub = ap.add_subparsers(dest="command", required=True)

    def alg_cmd(name, fn, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("algebra", help="corpus id (e.g. EX3, EX2(1,1)) or DSL file")
        p.set_defaults(fn=fn)
        return p

    alg_cmd("build", cmd_build, "compile an algebra and print its basis")
    alg_cmd("indec", cmd_indec, "list indecomposables with pd and id")
    for name, fn, h in (("audit", cmd_audit, "(m,n)-almost hereditary audit"),
                        ("parts", cmd_parts, "L^m, R^n and the trisection")):
        p = alg_cmd(name, fn, h)
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--n", type=int, required=True)
    p = alg_cmd("homdim", cmd_homdim, "global, projective and injective dimensions")
    p.add_argument("--module", help="module expression (e.g. P4+S2) or module file")
    p = alg_cmd("tilt", cmd_tilt, "check a tilting or cotilting module")
    p.add_argument("--module", required=True)
    p.add_argument("--kind", choices=["tilting", "cotilting"], default="tilting")
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p = sub.add_parser("chain", help="verify an (m,n)-quasitilted chain given as JSON")
    p.add_argument("chain")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=cmd_chain)
    p = alg_cmd("opext", cmd_opext, "one-point extension checks")
    p.add_argument("--module", required=True)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--emit", action="store_true", help="print the extension as DSL or JSON")
    p = sub.add_parser("corpus", help="verify the expected facts of the built-in corpus")
    p.add_argument("--filter")
    p.set_defaults(fn=cmd_corpus)
    return ap


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    saved = modules.DEFAULT_SEED, ar.DEFAULT_MAX_MODULES, ar.DEFAULT_MAX_DIM
    modules.DEFAULT_SEED = args.seed
    ar.DEFAULT_MAX_MODULES = args.max_modules
    ar.DEFAULT_MAX_DIM = args.max_dim
    try:
        return args.fn(args, out)
    except (InputError, DSLError, ar.ModuleRefError, modules.FieldTooSmall, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (ar.EnumerationCapExceeded, homology.ResolutionCapExceeded, AdmissibilityError) as exc:
        sys.stderr.write(f"resource cap: {exc}\n")
        return 3
    except ar.IncompleteEnumeration as exc:
        sys.stderr.write(f"partial enumeration: {exc}\n")
        return 1
    finally:
        modules.DEFAULT_SEED, ar.DEFAULT_MAX_MODULES, ar.DEFAULT_MAX_DIM = saved


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
