"""Splicing a rescaled asymptotically-flat bubble into an orbifold base.

The glued family is parameterized by t in (0, epsilon0^4): the bubble is
shrunk so that its geometry lives at length scale sqrt(t), and the splice
happens across the annulus where the rescaled radius t^{-1/4} rho passes
through the transition band [1, 2] of the cutoff, i.e. rho between t^{1/4}
and 2 t^{1/4} -- the geometric mean scale between the bubble (sqrt(t)) and
the base (1), where both metrics are flat to order t.

Componentwise the shrunk bubble tensor at a base point x is exactly the
bubble's components evaluated at x / sqrt(t): the two Jacobian factors of
the coordinate rescaling cancel against the metric rescaling, so no
explicit power of t appears, and none is inserted.  A bubble radius
rho_b = rho / sqrt(t) therefore corresponds to base radius rho exactly.
"""
from __future__ import annotations

import numpy as np

from ..geomkit.charts import ChartMetric
from ..singgroup import conjugate_equal
from .cutoff import cutoff

DEFAULT_EPSILON0 = 0.5


def check_glue_compatibility(base: ChartMetric, bubble: ChartMetric):
    """The bubble's asymptotic quotient group must match the base's
    singularity group, else the splice is not even continuous as an
    orbifold."""
    gb = base.quotient_group
    gq = bubble.quotient_group
    if gb is None and gq is None:
        return
    if gb is None or gq is None or not conjugate_equal(gb, gq):
        raise ValueError(
            "bubble does not match the singularity of the base "
            f"({None if gq is None else str(gq)} vs {None if gb is None else str(gb)})"
        )


def glued_metric(
    base: ChartMetric,
    bubble: ChartMetric,
    t: float,
    epsilon0: float = DEFAULT_EPSILON0,
    check_groups: bool = True,
) -> ChartMetric:
    """The spliced metric at gluing parameter t, as a chart.

    Requires t < epsilon0**4 so the whole transition band sits inside the
    unit chart of the base.
    """
    if not 0 < t < epsilon0**4:
        raise ValueError(
            f"t must lie in (0, epsilon0^4) = (0, {epsilon0 ** 4:g}) so the "
            "neck fits inside the base chart"
        )
    if check_groups:
        check_glue_compatibility(base, bubble)
    root_t = np.sqrt(t)
    quarter = t**0.25

    def comp(p):
        p = np.asarray(p, dtype=float)
        rho = float(np.linalg.norm(p))
        chi = cutoff(rho / quarter)
        if chi == 0.0:
            return np.asarray(base.components(p), dtype=float)
        gb = np.asarray(bubble.components(p / root_t), dtype=float)
        if chi == 1.0:
            return gb
        return chi * gb + (1.0 - chi) * np.asarray(base.components(p), dtype=float)

    def domain(p):
        p = np.asarray(p, dtype=float)
        rho = float(np.linalg.norm(p))
        if rho / quarter < 2.0 and not bubble.in_domain(p / root_t):
            return False
        if rho / quarter > 1.0 and base.domain is not None and not base.in_domain(p):
            return False
        return True

    return ChartMetric(
        name=f"glue_{bubble.name}_into_{base.name}_t{t:g}",
        components=comp,
        domain=domain,
        orientation=base.orientation,
        quotient_group=base.quotient_group,
    )


def neck_ring_points(t: float, ring_c: float, n: int, seed: int = 0) -> np.ndarray:
    """n points on the sphere rho = ring_c * t^{1/4}, the natural neck
    radii: ring_c in [1, 2] lands inside the transition band."""
    if n < 1:
        raise ValueError("need at least one ring point")
    rng = np.random.default_rng(seed)
    dirs = rng.normal(size=(n, 4))
    dirs /= np.linalg.norm(dirs, axis=1)[:, None]
    return ring_c * t**0.25 * dirs
