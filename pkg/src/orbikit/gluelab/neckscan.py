"""Convergence scan across the gluing neck.

For a decreasing sequence of gluing parameters t, sample the spliced
metric on the neck sphere rho = ring_c * t^{1/4} and record how far it
sits from the base and how much curvature it still carries.  A correct
splice of an asymptotically flat bubble whose metric decays like
rho_b^{-4} deviates from the flat base like t on these rings, so the
fitted log-log slope of the deviation against t should be 1; the check
asks for at least 0.9 to leave room for the subleading terms at the
largest t.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..geomkit.charts import ChartMetric, eguchi_hanson, flat_quotient
from ..geomkit.curvature import curvature_at
from .gluing import DEFAULT_EPSILON0, glued_metric, neck_ring_points

DEFAULT_T_VALUES = (1e-2, 1e-3, 1e-4)


@dataclass(frozen=True)
class NeckRing:
    """One neck ring: metric deviation plus both Weyl-half spectra.

    weyl_plus_spectrum is the tracked half: in the orientation that makes
    the bubble anti-self-dual it must return to the base value (zero for a
    flat base) as t shrinks.  weyl_minus_spectrum carries the bubble's own
    decaying tail curvature.
    """

    t: float
    ring_c: float
    sup_metric_dev: float
    weyl_plus_spectrum: tuple
    weyl_minus_spectrum: tuple

    def to_json_dict(self):
        return {
            "t": self.t,
            "ring_c": self.ring_c,
            "sup_metric_dev": self.sup_metric_dev,
            "weyl_plus_spectrum": list(self.weyl_plus_spectrum),
            "weyl_minus_spectrum": list(self.weyl_minus_spectrum),
        }


@dataclass(frozen=True)
class NeckScanResult:
    rings: tuple
    decay_exponent: float
    deviation_monotone: bool
    curvature_monotone: bool

    def to_json_dict(self):
        return {
            "rings": [r.to_json_dict() for r in self.rings],
            "decay_exponent": self.decay_exponent,
            "deviation_monotone": self.deviation_monotone,
            "curvature_monotone": self.curvature_monotone,
        }


def default_base() -> ChartMetric:
    from ..singgroup import GroupAction

    return flat_quotient(GroupAction.cyclic(2, (1, 1)))


def neck_scan(
    base: ChartMetric = None,
    bubble: ChartMetric = None,
    t_values=DEFAULT_T_VALUES,
    ring_c: float = 1.5,
    n_ring: int = 6,
    seed: int = 0,
    epsilon0: float = DEFAULT_EPSILON0,
    curvature_step_factor: float = 0.02,
) -> NeckScanResult:
    """Scan the neck over t_values (made strictly decreasing internally).

    The curvature stencil step shrinks with the ring radius
    (curvature_step_factor times it) so the finite differences stay inside
    the neck region at every t.
    """
    if base is None:
        base = default_base()
    if bubble is None:
        bubble = eguchi_hanson(a=1.0)
    ts = sorted(set(float(t) for t in t_values), reverse=True)
    if len(ts) < 2:
        raise ValueError("need at least two distinct t values to fit a slope")
    rings = []
    for t in ts:
        glued = glued_metric(base, bubble, t, epsilon0=epsilon0)
        pts = neck_ring_points(t, ring_c, n_ring, seed=seed)
        dev = 0.0
        for x in pts:
            dev = max(
                dev,
                float(
                    np.abs(
                        np.asarray(glued.components(x))
                        - np.asarray(base.components(x))
                    ).max()
                ),
            )
        step = curvature_step_factor * ring_c * t**0.25
        dec = curvature_at(glued, pts[0], step=step)
        spec_p = np.sort(np.linalg.eigvalsh(dec.weyl_plus))
        spec_m = np.sort(np.linalg.eigvalsh(dec.weyl_minus))
        rings.append(
            NeckRing(
                t=t,
                ring_c=ring_c,
                sup_metric_dev=dev,
                weyl_plus_spectrum=tuple(float(s) for s in spec_p),
                weyl_minus_spectrum=tuple(float(s) for s in spec_m),
            )
        )

    log_t = np.log([r.t for r in rings])
    log_dev = np.log([r.sup_metric_dev for r in rings])
    slope = float(np.polyfit(log_t, log_dev, 1)[0])
    devs = [r.sup_metric_dev for r in rings]
    curv = [max(abs(s) for s in r.weyl_plus_spectrum) for r in rings]
    return NeckScanResult(
        rings=tuple(rings),
        decay_exponent=slope,
        deviation_monotone=all(a > b for a, b in zip(devs, devs[1:])),
        curvature_monotone=all(a > b for a, b in zip(curv, curv[1:])),
    )
