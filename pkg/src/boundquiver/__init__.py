"""Exact GF(p) toolkit for bound quiver algebras: resolutions, AR theory,
left and right parts, tilting and one-point extensions."""

from .algebra import AdmissibilityError, BasicAlgebra, build_algebra
from .ar import (EnumerationCapExceeded, IndecSet, ModuleRefError, ar_sequence,
                 enumerate_indecomposables, resolve_module, tau, tau_inverse, transpose)
from .dsl import DSLError, ModuleSpec, QuiverSpec, parse_spec, spec_to_text
from .homology import (ResolutionCapExceeded, ext_dim, global_dimension, inj_dim,
                       proj_dim, resolution)
from .modules import (FieldTooSmall, Module, Morphism, decompose, dual_module, hom_dim,
                      injective, is_indecomposable, is_isomorphic, projective, simple)
from .opext import check_opext_theorems, check_pd_lemma, one_point_extension
from .parts import (AuditReport, audit_almost_hereditary, check_add_Lm, part_L, part_R,
                    trisection)
from .tilting import (ChainSpec, ChainStep, check_tilting, check_transfer,
                      endomorphism_algebra, is_splitting, verify_chain)


def load(source: str, p: int = 101) -> BasicAlgebra:
    """Compile DSL text into an algebra."""
    return build_algebra(parse_spec(source, default_field=p))


__version__ = "0.1.0"

__all__ = [
    "AdmissibilityError",
    "BasicAlgebra",
    "build_algebra",
    "EnumerationCapExceeded",
    "IndecSet",
    "ModuleRefError",
    "ar_sequence",
    "enumerate_indecomposables",
    "resolve_module",
    "tau",
    "tau_inverse",
    "transpose",
    "DSLError",
    "ModuleSpec",
    "QuiverSpec",
    "parse_spec",
    "spec_to_text",
    "ResolutionCapExceeded",
    "ext_dim",
    "global_dimension",
    "inj_dim",
    "proj_dim",
    "resolution",
    "FieldTooSmall",
    "Module",
    "Morphism",
    "decompose",
    "dual_module",
    "hom_dim",
    "injective",
    "is_indecomposable",
    "is_isomorphic",
    "projective",
    "simple",
    "check_opext_theorems",
    "check_pd_lemma",
    "one_point_extension",
    "AuditReport",
    "audit_almost_hereditary",
    "check_add_Lm",
    "part_L",
    "part_R",
    "trisection",
    "ChainSpec",
    "ChainStep",
    "check_tilting",
    "check_transfer",
    "endomorphism_algebra",
    "is_splitting",
    "verify_chain",
    "load",
]
