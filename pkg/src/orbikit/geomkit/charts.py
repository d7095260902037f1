"""Coordinate charts with closed-form metric components.

A ChartMetric is a plain container: a name, a domain predicate, a map from a
4-coordinate point to the symmetric matrix of metric components, optionally
the analytic first derivatives of those components, an orientation flag
relative to the coordinate order, and an optional quotient group when the
chart presents an orbifold or a cover (components must then be invariant
under the action).

The built-in library covers the flat, constant-curvature, Kahler-Einstein and
gravitational-instanton test cases every numerical routine in this package is
validated against, plus random polynomial perturbations of the flat metric
and a declarative config loader for user-defined charts.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from ..singgroup import GroupAction, parse_singularity


class ChartDomainError(ValueError):
    """Evaluation outside a chart's domain (or metric not positive definite)."""


@dataclass(frozen=True)
class ChartMetric:
    """Closed-form metric on a coordinate chart.

    components(p) returns the 4x4 symmetric matrix g_ij(p); d_components(p),
    when given, returns the (4, 4, 4) array of exact partials d[k, i, j] =
    (d/dx^k) g_ij, which tightens finite-difference error by two orders.
    orientation is +1 when the coordinate order agrees with the chart's
    preferred orientation, -1 otherwise; it decides which Weyl half is
    "self-dual".
    """

    name: str
    components: Callable[[np.ndarray], np.ndarray]
    domain: Optional[Callable[[np.ndarray], bool]] = None
    d_components: Optional[Callable[[np.ndarray], np.ndarray]] = None
    orientation: int = 1
    quotient_group: Optional[GroupAction] = None
    dimension: int = 4

    def __post_init__(self):
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        if self.dimension != 4:
            raise ValueError("only dimension 4 is supported")

    def in_domain(self, p: np.ndarray) -> bool:
        return self.domain is None or bool(self.domain(np.asarray(p, dtype=float)))

    def __call__(self, p: np.ndarray) -> np.ndarray:
        return self.components(np.asarray(p, dtype=float))


def rescaled(m: ChartMetric, factor: float) -> ChartMetric:
    """The same chart with metric multiplied by a positive constant."""
    if factor <= 0:
        raise ValueError("scale factor must be positive")
    d = None
    if m.d_components is not None:
        d = lambda p, _f=m.d_components: factor * _f(p)
    return ChartMetric(
        name=f"{m.name}*{factor:g}",
        components=lambda p, _f=m.components: factor * _f(p),
        domain=m.domain,
        d_components=d,
        orientation=m.orientation,
        quotient_group=m.quotient_group,
    )


def with_orientation(m: ChartMetric, orientation: int) -> ChartMetric:
    """The same chart with the orientation flag replaced."""
    return ChartMetric(
        name=m.name,
        components=m.components,
        domain=m.domain,
        d_components=m.d_components,
        orientation=orientation,
        quotient_group=m.quotient_group,
    )


# -- flat charts ------------------------------------------------------------

def euclidean() -> ChartMetric:
    eye = np.eye(4)
    zero = np.zeros((4, 4, 4))
    return ChartMetric(
        name="euclidean",
        components=lambda p: eye.copy(),
        d_components=lambda p: zero.copy(),
    )


def flat_quotient(group: GroupAction) -> ChartMetric:
    """Flat R^4/Gamma in covering coordinates; the cone point sits at 0."""
    eye = np.eye(4)
    zero = np.zeros((4, 4, 4))
    return ChartMetric(
        name=f"flat_mod_{group}",
        components=lambda p: eye.copy(),
        d_components=lambda p: zero.copy(),
        domain=lambda p: float(p @ p) > 0.0,
        quotient_group=group,
    )


# -- constant curvature -----------------------------------------------------

def round_sphere(radius: float = 1.0) -> ChartMetric:
    """Round S^4 in a stereographic chart: g = (2r/(1+|x|^2))^2 delta.

    Sectional curvature 1/r^2, scalar curvature 12/r^2, Einstein constant
    3/r^2, Weyl tensor zero.
    """
    r2 = radius * radius
    eye = np.eye(4)

    def comp(p):
        u = float(p @ p)
        f = 2.0 * radius / (1.0 + u)
        return (f * f) * eye

    def dcomp(p):
        u = float(p @ p)
        c = -16.0 * r2 / (1.0 + u) ** 3
        return c * np.einsum("k,ij->kij", p, eye)

    return ChartMetric(name=f"round_s4_r{radius:g}", components=comp, d_components=dcomp)


def sphere_z2_quotient(radius: float = 1.0) -> ChartMetric:
    """S^4/Z_2: the round chart with x ~ -x identified on each S^3 shell.

    The suspension of the antipodal Z_2 on S^3 gives an Einstein orbifold
    with two 1/2(1,1) points; this chart is centered at one of them (the
    origin).  The metric components are those of the round sphere and are
    invariant under the action.
    """
    base = round_sphere(radius)
    return ChartMetric(
        name=f"s4_mod_z2_r{radius:g}",
        components=base.components,
        d_components=base.d_components,
        quotient_group=GroupAction.cyclic(2, (1, 1)),
    )


# -- Kahler charts ----------------------------------------------------------

# dz^i / dx^a for complex coordinates z^1 = x^0 + i x^1, z^2 = x^2 + i x^3
_DZ = np.zeros((2, 4), dtype=complex)
_DZ[0, 0] = 1.0
_DZ[0, 1] = 1j
_DZ[1, 2] = 1.0
_DZ[1, 3] = 1j

# the standard complex structure in these coordinates: J^c_b, J(d_b) = J^c_b d_c
_J = np.array([
    [0.0, -1.0, 0.0, 0.0],
    [1.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, -1.0],
    [0.0, 0.0, 1.0, 0.0],
])


def _complex_point(p):
    return np.array([p[0] + 1j * p[1], p[2] + 1j * p[3]])


def _hermitian_to_real(h: np.ndarray) -> np.ndarray:
    """Real metric components of the Hermitian form h_{i jbar} dz^i dzbar^j."""
    m = np.einsum("ij,ia,jb->ab", h, _DZ, _DZ.conj())
    return 0.5 * np.real(m + m.T)


def _radial_kahler_chart(name, coef, dcoef, domain=None, group=None):
    """Kahler metric h = A(u) I + B(u) zbar (x) z with u = |z|^2.

    coef(u) -> (A, B); dcoef(u) -> (A', B').  Both the components and their
    exact first derivatives come from the complex chain rule: du/dx^k = 2 x^k
    and d(zbar_i z_j) = dzbar_i z_j + zbar_i dz_j.
    """

    def comp(p):
        z = _complex_point(p)
        u = float(np.real(z.conj() @ z))
        A, B = coef(u)
        return _hermitian_to_real(A * np.eye(2) + B * np.outer(z.conj(), z))

    def dcomp(p):
        z = _complex_point(p)
        u = float(np.real(z.conj() @ z))
        A, B = coef(u)
        dA, dB = dcoef(u)
        zbz = np.outer(z.conj(), z)
        out = np.zeros((4, 4, 4))
        for k in range(4):
            du = 2.0 * p[k]
            dh = (dA * du) * np.eye(2) + (dB * du) * zbz
            dh = dh + B * (np.outer(_DZ[:, k].conj(), z) + np.outer(z.conj(), _DZ[:, k]))
            out[k] = _hermitian_to_real(dh)
        return out

    return ChartMetric(
        name=name, components=comp, d_components=dcomp, domain=domain,
        quotient_group=group,
    )


def fubini_study(scale: float = 1.0) -> ChartMetric:
    """CP^2 with the Fubini-Study metric in an affine chart, times `scale`.

    Kahler potential log(1 + |z|^2): h = I/(1+u) - zbar(x)z/(1+u)^2.  At
    scale 1 the scalar curvature is 24, the Einstein constant 6, and the
    self-dual Weyl eigenvalues are (-2, -2, 4).
    """
    if scale <= 0:
        raise ValueError("scale must be positive")

    def coef(u):
        w = 1.0 + u
        return scale / w, -scale / (w * w)

    def dcoef(u):
        w = 1.0 + u
        return -scale / (w * w), 2.0 * scale / (w * w * w)

    return _radial_kahler_chart(f"fubini_study_s{scale:g}", coef, dcoef)


def s2xs2(radius1: float = 1.0, radius2: float = 1.0) -> ChartMetric:
    """Product of round 2-spheres, stereographic on each factor.

    Kahler with the product complex structure; scalar curvature
    2/r1^2 + 2/r2^2, Einstein exactly when the radii are equal.  For unit
    radii s = 4, the Einstein constant is 1, and the self-dual Weyl
    eigenvalues are (-1/3, -1/3, 2/3).
    """
    a2, b2 = radius1 * radius1, radius2 * radius2

    def comp(p):
        u1 = p[0] * p[0] + p[1] * p[1]
        u2 = p[2] * p[2] + p[3] * p[3]
        f1 = 2.0 * radius1 / (1.0 + u1)
        f2 = 2.0 * radius2 / (1.0 + u2)
        return np.diag([f1 * f1, f1 * f1, f2 * f2, f2 * f2])

    def dcomp(p):
        u1 = p[0] * p[0] + p[1] * p[1]
        u2 = p[2] * p[2] + p[3] * p[3]
        out = np.zeros((4, 4, 4))
        c1 = -16.0 * a2 / (1.0 + u1) ** 3
        c2 = -16.0 * b2 / (1.0 + u2) ** 3
        for k in (0, 1):
            out[k, 0, 0] = out[k, 1, 1] = c1 * p[k]
        for k in (2, 3):
            out[k, 2, 2] = out[k, 3, 3] = c2 * p[k]
        return out

    return ChartMetric(
        name=f"s2xs2_r{radius1:g}_{radius2:g}", components=comp, d_components=dcomp
    )


def eguchi_hanson(a: float = 1.0) -> ChartMetric:
    """The Eguchi-Hanson gravitational instanton in covering coordinates.

    Kahler potential chart on C^2 minus 0 with f'(u) = sqrt(a^4 + u^2)/u;
    the metric is invariant under z -> -z and descends to the A_1 ALE space
    asymptotic to R^4 / Z_2.  Ricci-flat; with orientation +1 in coordinate
    order (x0, x1, x2, x3) the self-dual Weyl tensor vanishes identically
    (this is the bubble orientation).  The coordinate origin is excluded:
    u = |z|^2 must exceed 0.01 a^2.
    """
    if a <= 0:
        raise ValueError("a must be positive")
    a4 = a ** 4

    def coef(u):
        S = math.sqrt(a4 + u * u)
        return S / u, -a4 / (S * u * u)

    def dcoef(u):
        S = math.sqrt(a4 + u * u)
        fpp = -a4 / (S * u * u)
        fppp = a4 * (1.0 / (S ** 3 * u) + 2.0 / (S * u ** 3))
        return fpp, fppp

    return _radial_kahler_chart(
        f"eguchi_hanson_a{a:g}",
        coef,
        dcoef,
        domain=lambda p: float(p @ p) > 0.01 * a * a,
        group=GroupAction.cyclic(2, (1, 1)),
    )


def kahler_two_form(m: ChartMetric) -> Callable[[np.ndarray], np.ndarray]:
    """The 2-form omega(X, Y) = g(JX, Y) for charts holomorphic in
    (x0 + i x1, x2 + i x3).  Valid only when the metric is J-invariant;
    a non-Hermitian metric is detected by the asymmetry of the result."""

    def omega(p):
        g = m.components(np.asarray(p, dtype=float))
        w = _J.T @ g
        if np.abs(w + w.T).max() > 1e-9 * max(1.0, np.abs(w).max()):
            raise ValueError(f"chart {m.name!r} is not Hermitian for the standard J")
        return 0.5 * (w - w.T)

    return omega


# -- random polynomial perturbations ---------------------------------------

def _monomial_exponents(degree: int) -> np.ndarray:
    exps = []
    for total in range(degree + 1):
        for e0 in range(total + 1):
            for e1 in range(total - e0 + 1):
                for e2 in range(total - e0 - e1 + 1):
                    exps.append((e0, e1, e2, total - e0 - e1 - e2))
    return np.array(exps, dtype=int)


def polynomial_metric(
    seed: int, amplitude: float = 0.05, degree: int = 3, box: float = 0.6
) -> ChartMetric:
    """Euclidean metric plus a random symmetric polynomial perturbation.

    Coefficients are drawn uniformly and normalized so each component of the
    perturbation stays below `amplitude` in sup norm over the domain box
    [-box, box]^4, keeping the metric positive definite.  Exact first
    derivatives are provided.  Deterministic in `seed`.
    """
    if not 0 < amplitude < 0.2:
        raise ValueError("amplitude must be in (0, 0.2)")
    rng = np.random.default_rng(seed)
    exps = _monomial_exponents(degree)
    nt = len(exps)
    raw = rng.uniform(-1.0, 1.0, size=(nt, 4, 4))
    raw = 0.5 * (raw + raw.transpose(0, 2, 1))
    # sup_|x|<=box |sum_t c_t x^alpha_t| <= sum_t |c_t| box^{|alpha_t|}
    weight = box ** exps.sum(axis=1)
    for i in range(4):
        for j in range(4):
            total = float(np.abs(raw[:, i, j]) @ weight)
            if total > 0:
                raw[:, i, j] *= amplitude / total
    coeffs = raw
    eye = np.eye(4)

    def comp(p):
        mono = np.prod(np.power(p[None, :], exps), axis=1)
        return eye + np.einsum("t,tij->ij", mono, coeffs)

    # d/dx^k of x^alpha: alpha_k x^(alpha - e_k)
    dexps = []
    dcoeffs = []
    for k in range(4):
        e = exps.copy()
        factor = e[:, k].astype(float)
        e[:, k] = np.maximum(e[:, k] - 1, 0)
        dexps.append(e)
        dcoeffs.append(coeffs * factor[:, None, None])

    def dcomp(p):
        out = np.zeros((4, 4, 4))
        for k in range(4):
            mono = np.prod(np.power(p[None, :], dexps[k]), axis=1)
            out[k] = np.einsum("t,tij->ij", mono, dcoeffs[k])
        return out

    def domain(p):
        return bool(np.all(np.abs(p) <= box))

    return ChartMetric(
        name=f"poly_seed{seed}", components=comp, d_components=dcomp, domain=domain
    )


# -- declarative config -----------------------------------------------------

_SAFE_NAMES = {
    "sin": np.sin, "cos": np.cos, "tan": np.tan, "exp": np.exp, "log": np.log,
    "sqrt": np.sqrt, "abs": np.abs, "pi": np.pi, "e": np.e,
    "cosh": np.cosh, "sinh": np.sinh, "tanh": np.tanh, "atan": np.arctan,
}


def chart_from_config(cfg: dict) -> ChartMetric:
    """Build a ChartMetric from a declarative document.

    Keys: "name" (text); "components" (4x4 nested list of expressions in
    x0..x3, given symmetric); optional "domain_box" ([[lo, hi]] * 4);
    optional "orientation" (+1/-1); optional "quotient" (singularity text
    like "1/4(1,1)").  Expressions may use sin/cos/exp/log/sqrt/pi etc.
    """
    name = cfg["name"]
    exprs = cfg["components"]
    if len(exprs) != 4 or any(len(row) != 4 for row in exprs):
        raise ValueError("components must be a 4x4 matrix of expressions")
    for i in range(4):
        for j in range(4):
            if str(exprs[i][j]).strip() != str(exprs[j][i]).strip():
                raise ValueError(f"components must be symmetric; entries ({i},{j}) differ")
    compiled = [
        [compile(str(exprs[i][j]), f"<{name}[{i}][{j}]>", "eval") for j in range(4)]
        for i in range(4)
    ]

    def comp(p):
        env = {"x0": p[0], "x1": p[1], "x2": p[2], "x3": p[3], **_SAFE_NAMES}
        g = np.empty((4, 4))
        for i in range(4):
            for j in range(i, 4):
                g[i, j] = g[j, i] = float(eval(compiled[i][j], {"__builtins__": {}}, env))
        return g

    domain = None
    if "domain_box" in cfg:
        box = np.asarray(cfg["domain_box"], dtype=float)
        if box.shape != (4, 2):
            raise ValueError("domain_box must be 4 pairs [lo, hi]")
        domain = lambda p: bool(np.all(p >= box[:, 0]) and np.all(p <= box[:, 1]))

    group = None
    if cfg.get("quotient"):
        group = parse_singularity(cfg["quotient"])

    return ChartMetric(
        name=name,
        components=comp,
        domain=domain,
        orientation=int(cfg.get("orientation", 1)),
        quotient_group=group,
    )


BUILTIN_CHARTS: dict[str, Callable[[], ChartMetric]] = {
    "euclidean": euclidean,
    "round_s4": round_sphere,
    "s4_mod_z2": sphere_z2_quotient,
    "fubini_study": fubini_study,
    "s2xs2": s2xs2,
    "eguchi_hanson": eguchi_hanson,
}


def builtin_chart(name: str) -> ChartMetric:
    try:
        factory = BUILTIN_CHARTS[name]
    except KeyError:
        raise ValueError(
            f"unknown chart {name!r}; built-ins: {sorted(BUILTIN_CHARTS)}"
        ) from None
    return factory()
