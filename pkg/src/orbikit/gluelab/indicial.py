"""Kernel elements of the flat-model linearized operator, degree by degree.

On the flat cone the linearized gauged Einstein operator acts on
homogeneous symmetric 2-tensor fields; its kernel in low degree is spanned
by harmonic trace-free pieces.  This module carries an explicit battery of
candidates -- a constant trace-free matrix, a harmonic quadratic, a
harmonic cubic -- evaluates the operator on them over a centered 3-sphere,
and integrates residuals and cross-pairings with a product quadrature that
is exact enough to push true kernel elements to rounding level while
non-kernel controls stay far from zero.

Quadrature: hyperspherical angles (psi, theta, phi) with measure
sin^2(psi) sin(theta) dpsi dtheta dphi; Gauss-Legendre in psi and theta,
trapezoid in the periodic phi.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..geomkit.charts import euclidean
from ..geomkit.operators import OperatorContext, SymTensorField, linearized_operator

SPHERE_TOTAL_MEASURE = 2.0 * np.pi**2


def sphere_quadrature(n_psi: int = 10, n_theta: int = 10, n_phi: int = 12):
    """(points, weights) on the unit 3-sphere; weights sum to 2 pi^2."""
    x_psi, w_psi = np.polynomial.legendre.leggauss(n_psi)
    psi = 0.5 * np.pi * (x_psi + 1.0)
    wp = 0.5 * np.pi * w_psi
    x_th, w_th = np.polynomial.legendre.leggauss(n_theta)
    theta = 0.5 * np.pi * (x_th + 1.0)
    wt = 0.5 * np.pi * w_th
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    wf = np.full(n_phi, 2.0 * np.pi / n_phi)

    pts = []
    wts = []
    for a, wa in zip(psi, wp):
        for b, wb in zip(theta, wt):
            for c, wc in zip(phi, wf):
                pts.append(
                    [
                        np.cos(a),
                        np.sin(a) * np.cos(b),
                        np.sin(a) * np.sin(b) * np.cos(c),
                        np.sin(a) * np.sin(b) * np.sin(c),
                    ]
                )
                wts.append(wa * wb * wc * np.sin(a) ** 2 * np.sin(b))
    return np.array(pts), np.array(wts)


def _stack(mats):
    return np.stack([np.asarray(m, dtype=float) for m in mats])


_D1 = np.diag([1.0, -1.0, 1.0, -1.0])
_D2 = np.diag([1.0, 1.0, -1.0, -1.0])


def constant_candidate() -> SymTensorField:
    return SymTensorField(
        components=lambda p: _D1,
        d_components=lambda p: np.zeros((4, 4, 4)),
        name="constant_trace_free",
    )


def harmonic_quadratic_candidate() -> SymTensorField:
    return SymTensorField(
        components=lambda p: _D1 * (p[1] * p[2]),
        d_components=lambda p: _stack(
            [np.zeros((4, 4)), _D1 * p[2], _D1 * p[1], np.zeros((4, 4))]
        ),
        name="harmonic_quadratic",
    )


def harmonic_cubic_candidate() -> SymTensorField:
    # the matrix must weight the two active coordinates equally, or the
    # double-divergence term of the operator survives
    def q(p):
        return p[0] ** 3 - 3.0 * p[0] * p[1] ** 2

    def dq(p):
        return np.array([3.0 * p[0] ** 2 - 3.0 * p[1] ** 2, -6.0 * p[0] * p[1], 0.0, 0.0])

    return SymTensorField(
        components=lambda p: _D2 * q(p),
        d_components=lambda p: np.einsum("k,ij->kij", dq(p), _D2),
        name="harmonic_cubic",
    )


def non_harmonic_control() -> SymTensorField:
    # x1^2 is not harmonic, so the operator must not annihilate this
    return SymTensorField(
        components=lambda p: _D1 * (p[1] ** 2),
        d_components=lambda p: _stack(
            [np.zeros((4, 4)), 2.0 * p[1] * _D1, np.zeros((4, 4)), np.zeros((4, 4))]
        ),
        name="non_harmonic_quadratic",
    )


def pure_trace_control() -> SymTensorField:
    # carries trace, so the trace terms of the operator activate
    return SymTensorField(
        components=lambda p: np.eye(4) * (p[1] * p[2]),
        d_components=lambda p: _stack(
            [np.zeros((4, 4)), np.eye(4) * p[2], np.eye(4) * p[1], np.zeros((4, 4))]
        ),
        name="trace_quadratic",
    )


KERNEL_CANDIDATES = {
    0: constant_candidate,
    2: harmonic_quadratic_candidate,
    3: harmonic_cubic_candidate,
}


def flat_operator_on_sphere(h: SymTensorField, radius: float = 1.0, quad=None):
    """Values of the flat-background linearized operator on h at quadrature
    points of the sphere of the given radius: (points, weights, values)."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    pts, wts = sphere_quadrature() if quad is None else quad
    ctx = OperatorContext(background=euclidean(), einstein_constant=0.0)
    vals = np.array(
        [linearized_operator(ctx, h, radius * x, path="formula") for x in pts]
    )
    return pts, wts, vals


def indicial_residual(h: SymTensorField, radius: float = 1.0, quad=None) -> float:
    """Root-mean-square of the flat operator applied to h over the sphere;
    zero (to quadrature rounding) exactly on kernel elements."""
    _, wts, vals = flat_operator_on_sphere(h, radius, quad)
    sq = np.einsum("nij,nij->n", vals, vals)
    return float(np.sqrt(np.sum(wts * sq) / np.sum(wts)))


def cross_degree_pairing(
    h1: SymTensorField, h2: SymTensorField, radius: float = 1.0, quad=None
) -> float:
    """Sphere-integral pairing <P h1, h2>; vanishes whenever h1 is a kernel
    element, in particular across different homogeneity degrees."""
    pts, wts, vals = flat_operator_on_sphere(h1, radius, quad)
    other = np.array([np.asarray(h2.components(radius * x), dtype=float) for x in pts])
    inner = np.einsum("nij,nij->n", vals, other)
    return float(np.sum(wts * inner) / np.sum(wts))


@dataclass(frozen=True)
class IndicialReport:
    kernel_residuals: tuple  # (name, degree, residual)
    pairings: tuple  # (name1, name2, value)
    control_residuals: tuple  # (name, residual)

    def to_json_dict(self):
        return {
            "kernel_residuals": [list(r) for r in self.kernel_residuals],
            "pairings": [list(p) for p in self.pairings],
            "control_residuals": [list(c) for c in self.control_residuals],
        }


def indicial_report(radius: float = 1.0, quad=None) -> IndicialReport:
    """Run the whole battery: kernel candidates, their cross-pairings, and
    the two negative controls."""
    if quad is None:
        quad = sphere_quadrature()
    fields = [(deg, make()) for deg, make in sorted(KERNEL_CANDIDATES.items())]
    residuals = tuple(
        (h.name, deg, indicial_residual(h, radius, quad)) for deg, h in fields
    )
    pairings = []
    for i, (_, h1) in enumerate(fields):
        for _, h2 in fields[i + 1:]:
            pairings.append((h1.name, h2.name, cross_degree_pairing(h1, h2, radius, quad)))
    controls = tuple(
        (h.name, indicial_residual(h, radius, quad))
        for h in (non_harmonic_control(), pure_trace_control())
    )
    return IndicialReport(
        kernel_residuals=residuals,
        pairings=tuple(pairings),
        control_residuals=controls,
    )
