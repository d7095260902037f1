"""Admissibility of singular Einstein limits: order bounds and allowed lists.

A positive-scalar Einstein 4-orbifold arising as a limit of smooth Einstein
metrics on a Del Pezzo 4-manifold M is constrained in two independent ways:
every singularity must be type T (so an ALE bubble exists), and a volume
comparison forces each group order strictly below 12 / c1^2(M).  Combining
the two reproduces, by pure enumeration, the known lists of singularities
allowed on degree-1..4 limits.  This module owns that arithmetic plus the
named orbifold families used to exercise it.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .singgroup import (
    GroupAction,
    TypeTVerdict,
    dynkin_of_su2,
    format_singularity,
    is_subgroup_su2,
    is_type_t,
)
from .topocalc import OrbifoldSpec


def order_bound(c1sq: int) -> Fraction:
    """Largest-volume constraint on singularity groups: |Gamma| < 12/c1sq.

    The inequality is strict; an order exactly equal to the bound is rejected.
    c1sq must be one of 1..9 (the only values a positive-scalar Einstein
    Del Pezzo limit can have).
    """
    if not 1 <= c1sq <= 9:
        raise ValueError(f"c1sq must lie in 1..9, got {c1sq}")
    return Fraction(12, c1sq)


@dataclass(frozen=True)
class AdmissVerdict:
    """Aggregate admissibility check over an orbifold's singular points.

    overall is true exactly when every singularity is type T and every group
    order is strictly below `bound` = 12/c1sq.
    """

    overall: bool
    per_singularity: tuple[tuple[str, TypeTVerdict, bool], ...]
    bound: Fraction

    def to_json_dict(self) -> dict:
        return {
            "overall": self.overall,
            "bound": str(self.bound),
            "per_singularity": [
                {"label": lab, "type_t": v.to_json_dict(), "order_ok": ok}
                for lab, v, ok in self.per_singularity
            ],
        }


def check_orbifold(x: OrbifoldSpec, c1sq: int) -> AdmissVerdict:
    """Run the type-T and order checks on every singular point of x."""
    bound = order_bound(c1sq)
    rows = []
    overall = True
    for lab, g in x.singularities:
        verdict = is_type_t(g)
        order_ok = g.order < bound
        rows.append((lab, verdict, order_ok))
        overall = overall and verdict.is_type_t and order_ok
    return AdmissVerdict(overall=overall, per_singularity=tuple(rows), bound=bound)


def _cyclic_classes(r: int):
    """One representative (1, q) per conjugacy class of free Z_r actions."""
    seen = set()
    for q in range(1, r):
        if gcd(q, r) != 1:
            continue
        key = min(q, pow(q, -1, r))
        if key not in seen:
            seen.add(key)
            yield GroupAction.cyclic(r, (1, key))


def enumerate_allowed(degree: int) -> tuple[GroupAction, ...]:
    """All singularity types allowed on a degree-`degree` Einstein limit.

    Derived, not transcribed: walk every conjugacy class of free U(2) actions
    with order strictly below 12/degree and keep the type-T ones.  Cyclic
    classes are enumerated by canonical weight, binary dihedral by index, and
    the binary polyhedral groups never fit (order >= 24 > 12 > bound).
    Deduplicated by conjugacy normal form; sorted by (order, kind, weight).
    """
    if not 1 <= degree <= 4:
        raise ValueError(f"degree must lie in 1..4, got {degree}")
    bound = order_bound(degree)
    allowed: list[GroupAction] = []
    r = 2
    while r < bound:
        for g in _cyclic_classes(r):
            if is_type_t(g).is_type_t:
                allowed.append(g)
        r += 1
    k = 4
    while 4 * (k - 2) < bound:
        g = GroupAction.binary_dihedral(k)
        if is_type_t(g).is_type_t:
            allowed.append(g)
        k += 1
    allowed.sort(key=lambda g: (g.order, g.kind, g.weights or (g.dihedral_index,)))
    return tuple(allowed)


def display_label(g: GroupAction) -> str:
    """ADE label when the action is in SU(2), weight syntax otherwise."""
    if is_subgroup_su2(g):
        return dynkin_of_su2(g)
    return format_singularity(g.canonical_form())


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, isqrt(p) + 1))


def cp2_quotient_family(p: int) -> OrbifoldSpec:
    """CP^2 / Z_p for prime p >= 5, acting with weights (0, 1, 2) on C^3.

    Three fixed points become singularities: local weights (1, 2), (-1, 1)
    and (-2, -1).  The last two are conjugate to (1, p-1) (an A_{p-1} point,
    type T) and to the (1, 2) class (not type T for squarefree order), so
    each member has exactly one type-T and two non-type-T singular points.
    euler_top = 3; signature_top = 1 is the signature of the rational
    intersection form (one positive-square generator).
    """
    if not _is_prime(p) or p < 5:
        raise ValueError(f"family is defined for prime p >= 5, got {p}")
    return OrbifoldSpec(
        name=f"CP2_mod_Z{p}",
        euler_top=3,
        signature_top=1,
        singularities=(
            ("p0", GroupAction.cyclic(p, (1, 2))),
            ("p1", GroupAction.cyclic(p, (p - 1, 1))),
            ("p2", GroupAction.cyclic(p, (p - 2, p - 1))),
        ),
    )


def cp1xcp1_quotient_family(k: int) -> OrbifoldSpec:
    """(CP^1 x CP^1) / Z_k, identical rotations on both factors, k >= 3, k != 4.

    Four fixed points: the two where the rotations turn in the same sense
    give 1/k(1, 1) points, the two opposite-sense ones give 1/k(1, k-1)
    (type A_{k-1}).  k = 2 and k = 4 are excluded: there the (1, 1) points
    are also type T (A_1 for k = 2, the (1,2,1) quotient model for k = 4)
    and the family stops exhibiting non-type-T behavior.  The underlying
    space has euler_top = 4, signature_top = 0.
    """
    if k < 2:
        raise ValueError(f"family needs k >= 2, got {k}")
    if k in (2, 4):
        raise ValueError(
            f"k = {k} is excluded: the 1/{k}(1,1) points are type T there"
        )
    return OrbifoldSpec(
        name=f"CP1xCP1_mod_Z{k}",
        euler_top=4,
        signature_top=0,
        singularities=(
            ("same0", GroupAction.cyclic(k, (1, 1))),
            ("same1", GroupAction.cyclic(k, (1, 1))),
            ("opp0", GroupAction.cyclic(k, (1, k - 1))),
            ("opp1", GroupAction.cyclic(k, (1, k - 1))),
        ),
    )
