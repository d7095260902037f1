"""orbikit: orbifold singularity bookkeeping and a numerical curvature lab.

Exact side: classify finite free U(2)-actions on S^3, decide which quotient
cones admit anti-self-dual Ricci-flat ALE models, track Euler characteristic
and signature through desingularization, and enumerate the singularity lists
allowed on Einstein orbifolds with positive scalar curvature.

Numerical side: a chart-based curvature engine (Riemann, Ricci, Weyl and its
self-dual part), Einstein and gauged-Einstein operators with linearization,
annulus gluing of ALE models into orbifold charts, weighted Holder norms, and
scan drivers behind the `orbikit` command line tool.
"""
from .singgroup import (
    GroupAction,
    TypeTVerdict,
    canonical_cyclic_form,
    conjugate_equal,
    dynkin_of_su2,
    format_singularity,
    group_order_oracle,
    is_subgroup_su2,
    is_type_t,
    parse_singularity,
)
from .topocalc import (
    BubbleModel,
    BubbleTree,
    OrbifoldSpec,
    bubble_for,
    bubble_tree_compose,
    del_pezzo_recognition,
    dynkin_intersection_matrix,
    glue_invariants,
    oss_target_prediction,
)
from .admiss import (
    AdmissVerdict,
    check_orbifold,
    cp1xcp1_quotient_family,
    cp2_quotient_family,
    enumerate_allowed,
    order_bound,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissVerdict",
    "BubbleModel",
    "BubbleTree",
    "GroupAction",
    "OrbifoldSpec",
    "TypeTVerdict",
    "bubble_for",
    "bubble_tree_compose",
    "canonical_cyclic_form",
    "check_orbifold",
    "conjugate_equal",
    "cp1xcp1_quotient_family",
    "cp2_quotient_family",
    "del_pezzo_recognition",
    "dynkin_intersection_matrix",
    "dynkin_of_su2",
    "enumerate_allowed",
    "format_singularity",
    "glue_invariants",
    "group_order_oracle",
    "is_subgroup_su2",
    "is_type_t",
    "order_bound",
    "parse_singularity",
    "__version__",
]
