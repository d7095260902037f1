"""Gauged Einstein operator and its linearization at a background metric.

The nonlinear operator sends a candidate metric g to

    F(g) = Ein(g) + lam * g + deltastar_g(xi),   xi = div-type gauge 1-form
                                                      of g against g0,

where Ein is the Einstein tensor r - (s/2) g and the gauge term kills the
diffeomorphism-invariance degeneracy: xi_a = -g0^{bc} (nabla0_b g)_{ca} and
deltastar_g is the symmetrized covariant derivative of the candidate.  Zeros
of F with xi = 0 are exactly the metrics with Ric = lam g.

The linearization at the background is offered through two independent
routes that must agree and are deliberately kept separate:

  * "formula": the curvature-identity expansion

        2 P(h) = nabla*nabla h + 2 Sym(r . h) - 2 Rhat(h) - Hess(tr h)
                 - (Lap(tr h) + divdiv h - <r, h>) g0 + (2 lam - s0) h

    (the deltastar-delta pieces of the Ricci variation and of the gauge
    term cancel identically, at any background);

  * "fd": centered differences of F(g0 + s h) in s with one Richardson
    level, touching none of the identities above.

On an Einstein background and a transverse-traceless direction both
collapse to P(h) = (1/2) nabla*nabla h - Rhat(h), exposed separately as
tt_reduced_operator.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .charts import ChartMetric
from .curvature import DEFAULT_STEP, field_jets, metric_jets
from .kernels import curvature_from_jets


@dataclass(frozen=True)
class SymTensorField:
    """A symmetric 2-tensor field on a chart: p -> 4x4 components, with
    optional exact first derivatives p -> (4, 4, 4) indexed [k, i, j]."""

    components: Callable[[np.ndarray], np.ndarray]
    d_components: Optional[Callable[[np.ndarray], np.ndarray]] = None
    name: str = "h"

    def __call__(self, p) -> np.ndarray:
        return np.asarray(self.components(np.asarray(p, dtype=float)), dtype=float)


def constant_field(matrix, name: str = "h") -> SymTensorField:
    mat = np.asarray(matrix, dtype=float)
    if not np.allclose(mat, mat.T):
        raise ValueError("constant field must be symmetric")
    return SymTensorField(
        components=lambda p: mat,
        d_components=lambda p: np.zeros((4, 4, 4)),
        name=name,
    )


def metric_direction(m: ChartMetric, name: str = "") -> SymTensorField:
    """The chart metric itself, viewed as a perturbation direction."""
    return SymTensorField(
        components=m.components,
        d_components=m.d_components,
        name=name or m.name,
    )


@dataclass(frozen=True)
class OperatorContext:
    """Everything the operator evaluations need.

    candidate = None means the candidate equals the background (so the
    nonlinear operator measures only the Einstein defect of the background
    itself).  einstein_constant is lam in Ric = lam g.
    """

    background: ChartMetric
    einstein_constant: float
    candidate: Optional[ChartMetric] = None
    step: float = DEFAULT_STEP
    extrapolation_order: int = 1

    def resolved_candidate(self) -> ChartMetric:
        return self.background if self.candidate is None else self.candidate


# -- covariant calculus on jets --------------------------------------------

def covariant_derivative_sym2(gam, h, dh):
    """nabla h, indexed [a, i, j]."""
    return (
        dh
        - np.einsum("eai,ej->aij", gam, h)
        - np.einsum("eaj,ie->aij", gam, h)
    )


def second_covariant_derivative_sym2(gam, dgam, h, dh, ddh):
    """nabla nabla h, indexed [b, a, i, j] = nabla_b nabla_a h_ij."""
    nh = covariant_derivative_sym2(gam, h, dh)
    # coordinate derivative of nabla h
    dnh = (
        ddh
        - np.einsum("beai,ej->baij", dgam, h)
        - np.einsum("eai,bej->baij", gam, dh)
        - np.einsum("beaj,ie->baij", dgam, h)
        - np.einsum("eaj,bie->baij", gam, dh)
    )
    return (
        dnh
        - np.einsum("fba,fij->baij", gam, nh)
        - np.einsum("fbi,afj->baij", gam, nh)
        - np.einsum("fbj,aif->baij", gam, nh)
    )


def _dginv(ginv, dg):
    return -np.einsum("ae,kef,fb->kab", ginv, dg, ginv)


def _ddginv(ginv, dg, ddg):
    a = -np.einsum("ae,klef,fb->klab", ginv, ddg, ginv)
    b = np.einsum("ae,kef,fc,lcd,db->klab", ginv, dg, ginv, dg, ginv)
    return a + b + b.transpose(1, 0, 2, 3)


def rhat(ginv, riemann, h):
    """The curvature action Rhat(h)_ab = R_eafb h^{ef} (positive on spheres:
    Rhat(h) = (tr h) g - h on the unit round metric)."""
    return np.einsum("ce,df,eafb,cd->ab", ginv, ginv, riemann, h)


# -- the nonlinear gauged operator ------------------------------------------

def _gauge_one_form(g0jets, gjets):
    """xi and its coordinate derivative dxi from the 2-jets of background
    and candidate."""
    g0, dg0, ddg0 = g0jets
    g, dg, ddg = gjets
    ginv0, gam0, dgam0, _, _, _ = curvature_from_jets(g0, dg0, ddg0)
    dginv0 = _dginv(ginv0, dg0)
    # A[b, c, a] = (nabla0_b g)_{ca}
    A = (
        dg
        - np.einsum("ebc,ea->bca", gam0, g)
        - np.einsum("eba,ce->bca", gam0, g)
    )
    dA = (
        ddg
        - np.einsum("kebc,ea->kbca", dgam0, g)
        - np.einsum("ebc,kea->kbca", gam0, dg)
        - np.einsum("keba,ce->kbca", dgam0, g)
        - np.einsum("eba,kce->kbca", gam0, dg)
    )
    xi = -np.einsum("bc,bca->a", ginv0, A)
    dxi = -(
        np.einsum("kbc,bca->ka", dginv0, A)
        + np.einsum("bc,kbca->ka", ginv0, dA)
    )
    return xi, dxi


def gauged_operator(ctx: OperatorContext, p) -> np.ndarray:
    """F(candidate) at p, a symmetric 4x4 matrix.  Vanishes (to stencil
    error) when the candidate satisfies Ric = lam g and is in gauge with
    the background."""
    p = np.asarray(p, dtype=float)
    step, order = ctx.step, ctx.extrapolation_order
    cand = ctx.resolved_candidate()
    g0jets = metric_jets(ctx.background, p, step=step, order=order)
    gjets = metric_jets(cand, p, step=step, order=order)
    g, _, _ = gjets
    _, gamg, _, _, ric, scal = curvature_from_jets(*gjets)
    xi, dxi = _gauge_one_form(g0jets, gjets)
    deltastar = 0.5 * (dxi + dxi.T) - np.einsum("eab,e->ab", gamg, xi)
    return ric - 0.5 * scal * g + ctx.einstein_constant * g + deltastar


# -- linearization ----------------------------------------------------------

def _field_jets_of(h: SymTensorField, p, step, order):
    return field_jets(
        h.components, p, step=step, order=order, d_components=h.d_components
    )


def linearized_operator(
    ctx: OperatorContext,
    h: SymTensorField,
    p,
    path: str = "formula",
    fd_scale: float = 1e-2,
) -> np.ndarray:
    """P(h) at p: the derivative of F at the background in direction h.

    path = "formula" evaluates the expanded curvature identities; path =
    "fd" differences the nonlinear operator through perturbed candidates
    g0 + s h (s = fd_scale, Richardson over s and 2s).  The two routes
    share nothing past the metric jets, so their agreement is a genuine
    cross-check, and both are kept on purpose.
    """
    p = np.asarray(p, dtype=float)
    if path == "fd":
        return _linearized_fd(ctx, h, p, fd_scale)
    if path != "formula":
        raise ValueError("path must be 'formula' or 'fd'")
    step, order = ctx.step, ctx.extrapolation_order
    g, dg, ddg = metric_jets(ctx.background, p, step=step, order=order)
    ginv, gam, dgam, riemann, ric, scal = curvature_from_jets(g, dg, ddg)
    hval, dh, ddh = _field_jets_of(h, p, step, order)

    nn = second_covariant_derivative_sym2(gam, dgam, hval, dh, ddh)
    rough = -np.einsum("ba,baij->ij", ginv, nn)
    sym_rh = 0.5 * (ric @ ginv @ hval + hval @ ginv @ ric)
    ring = rhat(ginv, riemann, hval)

    dginv = _dginv(ginv, dg)
    ddginv = _ddginv(ginv, dg, ddg)
    trh = float(np.einsum("ij,ij->", ginv, hval))
    dtrh = np.einsum("kij,ij->k", dginv, hval) + np.einsum("ij,kij->k", ginv, dh)
    ddtrh = (
        np.einsum("klij,ij->kl", ddginv, hval)
        + np.einsum("kij,lij->kl", dginv, dh)
        + np.einsum("lij,kij->kl", dginv, dh)
        + np.einsum("ij,klij->kl", ginv, ddh)
    )
    hess_tr = ddtrh - np.einsum("eab,e->ab", gam, dtrh)
    lap_tr = -float(np.einsum("ab,ab->", ginv, hess_tr))
    divdiv = float(np.einsum("ac,bd,cdab->", ginv, ginv, nn))
    r_dot_h = float(np.einsum("ae,bf,ef,ab->", ginv, ginv, ric, hval))

    twop = (
        rough
        + 2.0 * sym_rh
        - 2.0 * ring
        - hess_tr
        - (lap_tr + divdiv - r_dot_h) * g
        + (2.0 * ctx.einstein_constant - scal) * hval
    )
    return 0.5 * twop


def _perturbed(background: ChartMetric, h: SymTensorField, s: float) -> ChartMetric:
    d0, dh = background.d_components, h.d_components
    dcomp = None
    if d0 is not None and dh is not None:
        dcomp = lambda q: np.asarray(d0(q), dtype=float) + s * np.asarray(dh(q), dtype=float)
    return ChartMetric(
        name=f"{background.name}+{s:g}*{h.name}",
        components=lambda q: np.asarray(background.components(q), dtype=float)
        + s * np.asarray(h.components(q), dtype=float),
        domain=background.domain,
        d_components=dcomp,
        orientation=background.orientation,
        quotient_group=background.quotient_group,
    )


def _linearized_fd(ctx, h, p, fd_scale):
    if fd_scale <= 0:
        raise ValueError("fd_scale must be positive")

    def F(s):
        shifted = OperatorContext(
            background=ctx.background,
            einstein_constant=ctx.einstein_constant,
            candidate=_perturbed(ctx.background, h, s),
            step=ctx.step,
            extrapolation_order=ctx.extrapolation_order,
        )
        return gauged_operator(shifted, p)

    d1 = (F(fd_scale) - F(-fd_scale)) / (2 * fd_scale)
    if ctx.extrapolation_order >= 1:
        d2 = (F(2 * fd_scale) - F(-2 * fd_scale)) / (4 * fd_scale)
        return (4 * d1 - d2) / 3
    return d1


def tt_reduced_operator(ctx: OperatorContext, h: SymTensorField, p) -> np.ndarray:
    """(1/2) nabla*nabla h - Rhat(h): what P collapses to for transverse-
    traceless h over an Einstein background.  Uses background curvature
    only; callers are responsible for h actually being TT."""
    p = np.asarray(p, dtype=float)
    step, order = ctx.step, ctx.extrapolation_order
    g, dg, ddg = metric_jets(ctx.background, p, step=step, order=order)
    ginv, gam, dgam, riemann, _, _ = curvature_from_jets(g, dg, ddg)
    hval, dh, ddh = _field_jets_of(h, p, step, order)
    nn = second_covariant_derivative_sym2(gam, dgam, hval, dh, ddh)
    rough = -np.einsum("ba,baij->ij", ginv, nn)
    return 0.5 * rough - rhat(ginv, riemann, hval)


def two_path_deviation(
    ctx: OperatorContext,
    h: SymTensorField,
    p,
    fd_scale: float = 1e-2,
    floor: float = 1e-6,
) -> float:
    """Relative sup-norm gap between the formula and fd linearizations.

    floor keeps the ratio meaningful when the direction happens to be
    annihilated: below it the comparison degrades to absolute (otherwise
    two agreeing near-zero answers would report a large spurious ratio).
    """
    a = linearized_operator(ctx, h, p, path="formula")
    b = linearized_operator(ctx, h, p, path="fd", fd_scale=fd_scale)
    scale = max(np.abs(a).max(), np.abs(b).max(), floor)
    return float(np.abs(a - b).max() / scale)
