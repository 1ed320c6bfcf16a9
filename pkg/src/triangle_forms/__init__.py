"""Hauptmodul and discriminant expansions for triangle groups (p, q, oo),
polynomial certificates for automorphic forms, and heuristic CM-candidate
classification of their zeros."""

from .certificate import (
    AutomorphicFormInput,
    PipelineConfig,
    PolynomialCertificate,
    Theorem2Report,
    delta_form,
    is_equivalent,
    pole_reduce,
    theorem1_pipeline,
    theorem2_check,
)
from .classify import ClassifierBounds, PointClassification, RecognitionResult, classify_point, recognize_algebraic
from .discriminant import DiscriminantExpansion, delta_expansion, delta_nonvanishing_check
from .errors import TriangleFormsError
from .fields import RATIONAL, BallField
from .groups import INF, GroupConstants, Signature, derive_constants, is_arithmetic, make_signature
from .hauptmodul import HauptmodulExpansion, hauptmodul_expansion, schwarzian_rhs, verify_schwarzian
from .numeric import EvalContext, compute_alpha3, eval_delta, eval_form, eval_J, locate_zero, make_context
from .series import (
    TruncatedSeries,
    series_add,
    series_exp,
    series_log,
    series_mul,
    series_pow,
    series_revert,
    theta_derivative,
)

__all__ = [
    "AutomorphicFormInput", "BallField", "ClassifierBounds", "DiscriminantExpansion", "EvalContext",
    "GroupConstants", "HauptmodulExpansion", "INF", "PipelineConfig", "PointClassification",
    "PolynomialCertificate", "RATIONAL", "RecognitionResult", "Signature", "Theorem2Report",
    "TriangleFormsError", "TruncatedSeries", "classify_point", "compute_alpha3", "delta_expansion",
    "delta_form", "delta_nonvanishing_check", "derive_constants", "eval_J", "eval_delta", "eval_form",
    "hauptmodul_expansion", "is_arithmetic", "is_equivalent", "locate_zero", "make_context",
    "make_signature", "pole_reduce", "recognize_algebraic", "schwarzian_rhs", "series_add",
    "series_exp", "series_log", "series_mul", "series_pow", "series_revert", "theorem1_pipeline",
    "theorem2_check", "theta_derivative", "verify_schwarzian",
]
