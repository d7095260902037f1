"""Weighted Hoelder-type norms on annuli, with obstruction-aware variants.

Fields near an orbifold point are measured against powers of the radius:
"orbifold" mode weights by rho^{-beta} (unit size for a field growing like
rho^beta toward the singular point), "ale" mode by rho^{+beta} (unit size
for decay like rho^{-beta} toward infinity).  The Hoelder quotient is
sampled on point pairs at a fixed tiny separation: for smooth fields the
sampled seminorm is negligible against the sup part, while genuinely rough
or rapidly varying fields still register.

The starred norm splits off the L^2-projection of the field onto the
constant trace-free symmetric matrices over the annulus and charges those
nine coefficients separately, at absolute value instead of through the
radial weight; this is what makes a cutoff times a constant obstruction
matrix cheap even when the plain weighted norm would be large.  The
double-starred variant fits the projection with a rho^{-4} profile instead,
matching the leading decay rate of asymptotically flat bubble metrics.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

PAIR_SEPARATION = 1e-6


def _trace_free_basis() -> np.ndarray:
    """Orthonormal (Frobenius) basis of the 9-dimensional space of
    symmetric trace-free 4x4 matrices."""
    basis = []
    for a in range(4):
        for b in range(a + 1, 4):
            m = np.zeros((4, 4))
            m[a, b] = m[b, a] = 1.0 / np.sqrt(2.0)
            basis.append(m)
    basis.append(np.diag([1.0, -1.0, 0.0, 0.0]) / np.sqrt(2.0))
    basis.append(np.diag([1.0, 1.0, -2.0, 0.0]) / np.sqrt(6.0))
    basis.append(np.diag([1.0, 1.0, 1.0, -3.0]) / np.sqrt(12.0))
    return np.array(basis)


TRACE_FREE_BASIS = _trace_free_basis()


def _annulus_samples(annulus, n_samples, seed):
    r0, r1 = float(annulus[0]), float(annulus[1])
    if not 0 < r0 < r1:
        raise ValueError("annulus must satisfy 0 < r0 < r1")
    rng = np.random.default_rng(seed)
    radii = rng.uniform(r0, r1, size=n_samples)
    dirs = rng.normal(size=(n_samples, 4))
    dirs /= np.linalg.norm(dirs, axis=1)[:, None]
    pair_dirs = rng.normal(size=(n_samples, 4))
    pair_dirs /= np.linalg.norm(pair_dirs, axis=1)[:, None]
    return radii[:, None] * dirs, pair_dirs


def _weight_exponents(mode: str, beta: float, alpha: float) -> Tuple[float, float]:
    if mode == "orbifold":
        return -beta, alpha - beta
    if mode == "ale":
        return beta, alpha + beta
    raise ValueError("mode must be 'orbifold' or 'ale'")


def _magnitude(v) -> float:
    return float(np.abs(np.asarray(v, dtype=float)).max())


def weighted_holder_norm(
    field: Callable[[np.ndarray], np.ndarray],
    beta: float,
    annulus=(0.1, 1.0),
    mode: str = "orbifold",
    alpha: float = 0.5,
    n_samples: int = 200,
    seed: int = 0,
    pair_separation: float = PAIR_SEPARATION,
) -> float:
    """Sampled weighted norm: radial-weighted sup plus the weighted Hoelder
    quotient over point pairs at the fixed separation."""
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    if pair_separation <= 0:
        raise ValueError("pair separation must be positive")
    pts, pair_dirs = _annulus_samples(annulus, n_samples, seed)
    w0, w1 = _weight_exponents(mode, beta, alpha)
    sup_part = 0.0
    holder_part = 0.0
    for x, d in zip(pts, pair_dirs):
        rho = float(np.linalg.norm(x))
        fx = np.asarray(field(x), dtype=float)
        sup_part = max(sup_part, rho**w0 * _magnitude(fx))
        y = x + pair_separation * d
        rho_min = min(rho, float(np.linalg.norm(y)))
        quot = _magnitude(np.asarray(field(y), dtype=float) - fx) / pair_separation**alpha
        holder_part = max(holder_part, rho_min**w1 * quot)
    return sup_part + holder_part


@dataclass(frozen=True)
class SplitNormResult:
    """A norm split into obstruction coefficients and a weighted remainder.

    total = sum |coefficients| + remainder_norm."""

    coefficients: tuple
    remainder_norm: float
    profile: str

    @property
    def coefficient_part(self) -> float:
        return float(sum(abs(c) for c in self.coefficients))

    @property
    def total(self) -> float:
        return self.coefficient_part + self.remainder_norm

    def to_json_dict(self):
        return {
            "coefficients": list(self.coefficients),
            "coefficient_part": self.coefficient_part,
            "remainder_norm": self.remainder_norm,
            "profile": self.profile,
            "total": self.total,
        }


def _split_norm(field, beta, annulus, mode, alpha, n_samples, seed,
                pair_separation, profile_exp, profile_name):
    pts, _ = _annulus_samples(annulus, n_samples, seed)
    radii = np.linalg.norm(pts, axis=1)
    prof = radii**profile_exp
    vals = np.array([np.asarray(field(x), dtype=float) for x in pts])
    coeffs = np.zeros(len(TRACE_FREE_BASIS))
    gram = float(np.sum(prof * prof))
    for k, H in enumerate(TRACE_FREE_BASIS):
        inner = np.einsum("nij,ij->n", vals, H)
        coeffs[k] = float(np.sum(prof * inner) / gram)

    def remainder(x):
        r = float(np.linalg.norm(x))
        model = np.einsum("k,kij->ij", coeffs, TRACE_FREE_BASIS) * r**profile_exp
        return np.asarray(field(x), dtype=float) - model

    rem = weighted_holder_norm(
        remainder, beta, annulus=annulus, mode=mode, alpha=alpha,
        n_samples=n_samples, seed=seed, pair_separation=pair_separation,
    )
    return SplitNormResult(
        coefficients=tuple(float(c) for c in coeffs),
        remainder_norm=rem,
        profile=profile_name,
    )


def starred_norm(
    field: Callable[[np.ndarray], np.ndarray],
    beta: float,
    annulus=(0.1, 1.0),
    mode: str = "orbifold",
    alpha: float = 0.5,
    n_samples: int = 200,
    seed: int = 0,
    pair_separation: float = PAIR_SEPARATION,
) -> SplitNormResult:
    """Weighted norm with the constant trace-free part split off by L^2
    projection over the sampled annulus."""
    return _split_norm(
        field, beta, annulus, mode, alpha, n_samples, seed, pair_separation,
        profile_exp=0.0, profile_name="constant",
    )


def double_starred_norm(
    field: Callable[[np.ndarray], np.ndarray],
    beta: float,
    annulus=(0.1, 1.0),
    mode: str = "ale",
    alpha: float = 0.5,
    n_samples: int = 200,
    seed: int = 0,
    pair_separation: float = PAIR_SEPARATION,
) -> SplitNormResult:
    """Weighted norm with the leading rho^{-4} trace-free tail split off by
    least squares over the sampled annulus."""
    return _split_norm(
        field, beta, annulus, mode, alpha, n_samples, seed, pair_separation,
        profile_exp=-4.0, profile_name="rho^-4",
    )
