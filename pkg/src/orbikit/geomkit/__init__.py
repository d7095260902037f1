"""Numerical 4-dimensional Riemannian geometry on coordinate charts.

charts: a library of explicit metrics (flat, round, product, Kahler,
gravitational-instanton) with exact first derivatives where closed forms
exist, plus config-driven custom charts.

curvature: finite-difference 2-jets, the full curvature decomposition with
the self-dual / anti-self-dual Weyl split, and the pointwise diagnostics
built on it.

operators: the gauge-fixed Einstein operator and its linearization, each
computable along two independent routes.

kernels: the jets-to-curvature contraction, in a compiled variant when the
extension built, with a pure-Python twin always available (ORBIKIT_PURE=1
forces the fallback).
"""
from .charts import (
    BUILTIN_CHARTS,
    ChartDomainError,
    ChartMetric,
    builtin_chart,
    chart_from_config,
    eguchi_hanson,
    euclidean,
    flat_quotient,
    fubini_study,
    kahler_two_form,
    polynomial_metric,
    rescaled,
    round_sphere,
    s2xs2,
    sphere_z2_quotient,
    with_orientation,
)
from .curvature import (
    CurvatureDecomposition,
    HermitianCriteriaReport,
    HermitianSampleRow,
    bianchi_divergence_check,
    curvature_at,
    einstein_residual,
    field_jets,
    hermitian_criteria_report,
    metric_jets,
    orthonormal_frames,
    weyl_plus_spectrum,
    weyl_split,
    wu_check,
)
from .kernels import active_backend_name, curvature_from_jets
from .operators import (
    OperatorContext,
    SymTensorField,
    constant_field,
    gauged_operator,
    linearized_operator,
    metric_direction,
    tt_reduced_operator,
    two_path_deviation,
)

__all__ = [
    "BUILTIN_CHARTS",
    "ChartDomainError",
    "ChartMetric",
    "CurvatureDecomposition",
    "HermitianCriteriaReport",
    "HermitianSampleRow",
    "OperatorContext",
    "SymTensorField",
    "active_backend_name",
    "bianchi_divergence_check",
    "builtin_chart",
    "chart_from_config",
    "constant_field",
    "curvature_at",
    "curvature_from_jets",
    "eguchi_hanson",
    "einstein_residual",
    "euclidean",
    "field_jets",
    "flat_quotient",
    "fubini_study",
    "gauged_operator",
    "hermitian_criteria_report",
    "kahler_two_form",
    "linearized_operator",
    "metric_direction",
    "metric_jets",
    "orthonormal_frames",
    "polynomial_metric",
    "rescaled",
    "round_sphere",
    "s2xs2",
    "sphere_z2_quotient",
    "tt_reduced_operator",
    "two_path_deviation",
    "weyl_plus_spectrum",
    "weyl_split",
    "with_orientation",
    "wu_check",
]
