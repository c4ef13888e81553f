"""Exact symbolic toolkit for rank-one-over-the-Cartan modules of
Kac-Moody algebras: polynomial arithmetic over Q, shift-twisted
operators, Cartan matrix classification, Groebner-based constraint
solving, module families, relation verification and classification."""

from .exactpoly import ContextMismatch, MultiPoly, VarContext, parse_poly
from .twistop import TwistedOp, parse_op
from .cartan import (GCM, GCMError, DynkinDiagram, TypeResult, classify_type,
                     validate_gcm, finite_gcm, affine_gcm, finite_catalog,
                     affine_catalog, find_subdiagram, coroot_polynomial,
                     cartan_context)
from .idealsolve import PolySystem, SystemResult, buchberger, normal_form, is_unsat
from .modfam import (FamilyError, HFreeModule, UnitSet, build_A, build_B2,
                     build_C, build_sl2_central, build_family, module_context)
from .verify import (RelationReport, ReductionTrace, relation_residuals,
                     simplicity_probe, verify_serre)
from .classify import (ClassificationResult, ObstructionResult, Rank2Result,
                       RestrictionError, SignatureSet, decide,
                       degree_signatures, refute_affine_loop,
                       restriction_obstruction, search_rank2,
                       star_obstruction)

__version__ = "0.1.0"

__all__ = [
    "FamilyError", "HFreeModule", "UnitSet", "build_A", "build_B2",
    "build_C", "build_sl2_central", "build_family", "module_context",
    "RelationReport", "ReductionTrace", "relation_residuals",
    "simplicity_probe", "verify_serre",
    "ClassificationResult", "ObstructionResult", "Rank2Result",
    "RestrictionError", "SignatureSet", "decide", "degree_signatures",
    "refute_affine_loop", "restriction_obstruction", "search_rank2",
    "star_obstruction",
    "ContextMismatch", "MultiPoly", "VarContext", "parse_poly",
    "TwistedOp", "parse_op",
    "GCM", "GCMError", "DynkinDiagram", "TypeResult", "classify_type",
    "validate_gcm", "finite_gcm", "affine_gcm", "finite_catalog",
    "affine_catalog", "find_subdiagram", "coroot_polynomial",
    "cartan_context",
    "PolySystem", "SystemResult", "buchberger", "normal_form", "is_unsat",
]
