"""Gluing laboratory: splice bubbles into orbifold bases and measure the
result -- transition functions, the glued family, weighted norms with
obstruction splitting, the flat-model kernel battery, and neck convergence
scans."""
from .cutoff import cutoff
from .gluing import (
    DEFAULT_EPSILON0,
    check_glue_compatibility,
    glued_metric,
    neck_ring_points,
)
from .indicial import (
    IndicialReport,
    constant_candidate,
    cross_degree_pairing,
    harmonic_cubic_candidate,
    harmonic_quadratic_candidate,
    indicial_report,
    indicial_residual,
    non_harmonic_control,
    pure_trace_control,
    sphere_quadrature,
)
from .neckscan import DEFAULT_T_VALUES, NeckRing, NeckScanResult, default_base, neck_scan
from .norms import (
    PAIR_SEPARATION,
    SplitNormResult,
    TRACE_FREE_BASIS,
    double_starred_norm,
    starred_norm,
    weighted_holder_norm,
)

__all__ = [
    "DEFAULT_EPSILON0",
    "DEFAULT_T_VALUES",
    "IndicialReport",
    "NeckRing",
    "NeckScanResult",
    "PAIR_SEPARATION",
    "SplitNormResult",
    "TRACE_FREE_BASIS",
    "check_glue_compatibility",
    "constant_candidate",
    "cross_degree_pairing",
    "cutoff",
    "default_base",
    "double_starred_norm",
    "glued_metric",
    "harmonic_cubic_candidate",
    "harmonic_quadratic_candidate",
    "indicial_report",
    "indicial_residual",
    "neck_ring_points",
    "neck_scan",
    "non_harmonic_control",
    "pure_trace_control",
    "sphere_quadrature",
    "starred_norm",
    "weighted_holder_norm",
]
