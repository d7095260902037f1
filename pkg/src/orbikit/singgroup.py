"""Finite groups acting freely on the 3-sphere, and which orbifold cones they bound.

The quotient singularities that matter here are R^4/Gamma for Gamma a finite
subgroup of U(2) acting freely on S^3.  Such a singularity admits an
anti-self-dual Ricci-flat ALE model (we call the singularity "type T") exactly
when Gamma is conjugate into SU(2) -- the ADE list -- or is cyclic of order
l*m^2 with weights conjugate to (1, l*m*n - 1) for some m >= 2, n < m coprime
to m.  This module holds the exact classification logic: conjugacy normal
forms for cyclic actions, the SU(2) membership test, the type-T decision, and
a generator-closure oracle for the binary polyhedral orders.

Everything here is integer arithmetic on immutable values; no numerics.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import gcd, isqrt
from typing import Optional, Union

CYCLIC = "cyclic"
BINARY_DIHEDRAL = "binary_dihedral"
BINARY_TETRAHEDRAL = "binary_tetrahedral"
BINARY_OCTAHEDRAL = "binary_octahedral"
BINARY_ICOSAHEDRAL = "binary_icosahedral"

_POLYHEDRAL_ORDERS = {
    BINARY_TETRAHEDRAL: 24,
    BINARY_OCTAHEDRAL: 48,
    BINARY_ICOSAHEDRAL: 120,
}
_POLYHEDRAL_DYNKIN = {
    BINARY_TETRAHEDRAL: "E6",
    BINARY_OCTAHEDRAL: "E7",
    BINARY_ICOSAHEDRAL: "E8",
}


@dataclass(frozen=True)
class GroupAction:
    """A finite subgroup of U(2) acting freely on S^3, in normal form.

    `kind` is one of cyclic / binary_dihedral / binary_tetrahedral /
    binary_octahedral / binary_icosahedral.  Cyclic actions carry `weights`
    (a, b): the generator acts on C^2 as diag(zeta^a, zeta^b) for zeta a
    primitive `order`-th root of unity.  Binary dihedral actions carry the
    Dynkin index k >= 4 (order 4(k-2)).

    Weights are stored as given (reduced into 1..order-1) so printing
    round-trips; the conjugacy-canonical weight is computed at construction
    and kept alongside.
    """

    kind: str
    order: int
    weights: Optional[tuple[int, int]] = None
    dihedral_index: Optional[int] = None
    canonical_q: Optional[int] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.kind == CYCLIC:
            r = self.order
            if r < 2:
                raise ValueError("cyclic action needs order >= 2")
            if self.weights is None or len(self.weights) != 2:
                raise ValueError("cyclic action needs a weight pair (a, b)")
            a, b = (w % r for w in self.weights)
            if gcd(a, r) != 1 or gcd(b, r) != 1:
                raise ValueError(
                    f"weights ({self.weights[0]},{self.weights[1]}) mod {r}: "
                    "action is not free on the 3-sphere"
                )
            object.__setattr__(self, "weights", (a, b))
            object.__setattr__(self, "canonical_q", _canonical_q(r, a, b))
        elif self.kind == BINARY_DIHEDRAL:
            k = self.dihedral_index
            if k is None or k < 4:
                raise ValueError("binary dihedral action needs Dynkin index k >= 4")
            if self.order != 4 * (k - 2):
                raise ValueError(f"binary dihedral D{k} has order {4 * (k - 2)}")
            if self.weights is not None:
                raise ValueError("weights apply to cyclic actions only")
        elif self.kind in _POLYHEDRAL_ORDERS:
            if self.order != _POLYHEDRAL_ORDERS[self.kind]:
                raise ValueError(f"{self.kind} has order {_POLYHEDRAL_ORDERS[self.kind]}")
            if self.weights is not None:
                raise ValueError("weights apply to cyclic actions only")
        else:
            raise ValueError(f"unknown action kind: {self.kind!r}")

    # -- constructors --

    @staticmethod
    def cyclic(order: int, weights: tuple[int, int]) -> "GroupAction":
        return GroupAction(CYCLIC, order, weights=tuple(weights))

    @staticmethod
    def binary_dihedral(k: int) -> "GroupAction":
        return GroupAction(BINARY_DIHEDRAL, 4 * (k - 2), dihedral_index=k)

    @staticmethod
    def binary_tetrahedral() -> "GroupAction":
        return GroupAction(BINARY_TETRAHEDRAL, 24)

    @staticmethod
    def binary_octahedral() -> "GroupAction":
        return GroupAction(BINARY_OCTAHEDRAL, 48)

    @staticmethod
    def binary_icosahedral() -> "GroupAction":
        return GroupAction(BINARY_ICOSAHEDRAL, 120)

    # -- conjugacy --

    def conjugacy_key(self) -> tuple:
        """Hashable key identifying the action up to conjugacy in U(2)."""
        if self.kind == CYCLIC:
            return (CYCLIC, self.order, self.canonical_q)
        if self.kind == BINARY_DIHEDRAL:
            return (BINARY_DIHEDRAL, self.dihedral_index)
        return (self.kind,)

    def canonical_form(self) -> "GroupAction":
        """The conjugacy representative: cyclic weights rewritten as (1, q)."""
        if self.kind == CYCLIC:
            return GroupAction.cyclic(self.order, (1, self.canonical_q))
        return self

    def __str__(self) -> str:
        return format_singularity(self)


def conjugate_equal(g1: GroupAction, g2: GroupAction) -> bool:
    return g1.conjugacy_key() == g2.conjugacy_key()


@dataclass(frozen=True)
class TypeTVerdict:
    """Outcome of the type-T decision.

    `witness` is the ALE model's label: an ADE string for subgroups of SU(2),
    a triple (l, m, n) for the cyclic order-l*m^2 family, None for negative
    verdicts.  `reason` explains negative verdicts.
    """

    is_type_t: bool
    witness: Union[str, tuple[int, int, int], None] = None
    reason: Optional[str] = None

    def to_json_dict(self) -> dict:
        w = list(self.witness) if isinstance(self.witness, tuple) else self.witness
        return {"is_type_t": self.is_type_t, "witness": w, "reason": self.reason}


def _canonical_q(r: int, a: int, b: int) -> int:
    q = (pow(a, -1, r) * b) % r
    return min(q, pow(q, -1, r))


def canonical_cyclic_form(r: int, a: int, b: int) -> tuple[int, int]:
    """Conjugacy normal form (1, q) of the cyclic weight pair (a, b) mod r.

    Two free cyclic actions of the same order are conjugate in U(2) iff a
    simultaneous unit rescaling and/or a swap of the two weights carries one
    weight pair to the other; both moves preserve orientation.  That reduces
    every class to (1, q) with q = min(a^{-1}b, (a^{-1}b)^{-1}) mod r.
    Complex conjugation of both weights is deliberately NOT a move here: it
    reverses orientation, and the ALE-model question is orientation-sensitive.
    """
    if r < 2:
        raise ValueError("order must be >= 2")
    a, b = a % r, b % r
    if gcd(a, r) != 1 or gcd(b, r) != 1:
        raise ValueError(f"weights ({a},{b}) mod {r}: action is not free on the 3-sphere")
    return (1, _canonical_q(r, a, b))


def is_subgroup_su2(g: GroupAction) -> bool:
    """Whether the action lies in SU(2): cyclic needs a + b = 0 mod r."""
    if g.kind == CYCLIC:
        a, b = g.weights
        return (a + b) % g.order == 0
    return True


def dynkin_of_su2(g: GroupAction) -> str:
    """ADE label of an SU(2) action: A_{r-1}, D_k, or E_6/E_7/E_8."""
    if not is_subgroup_su2(g):
        raise ValueError(f"{format_singularity(g)} is not an ADE singularity (not in SU(2))")
    if g.kind == CYCLIC:
        return f"A{g.order - 1}"
    if g.kind == BINARY_DIHEDRAL:
        return f"D{g.dihedral_index}"
    return _POLYHEDRAL_DYNKIN[g.kind]


def type_t_factorizations(g: GroupAction) -> list[tuple[int, int, int]]:
    """All (l, m, n) with order = l*m^2, m >= 2, 1 <= n < m, gcd(m,n) = 1 whose
    weight pattern (1, l*m*n - 1) is conjugate to g.  Sorted lexicographically."""
    if g.kind != CYCLIC:
        return []
    r = g.order
    hits = []
    for m in range(2, isqrt(r) + 1):
        if r % (m * m):
            continue
        l = r // (m * m)
        for n in range(1, m):
            if gcd(m, n) != 1:
                continue
            w = (l * m * n - 1) % r
            # l*m*n - 1 is automatically a unit mod l*m^2 (it is -1 mod every
            # prime divisor of l*m), so the pattern is always a free action.
            if _canonical_q(r, 1, w) == g.canonical_q:
                hits.append((l, m, n))
    return sorted(hits)


def is_type_t(g: GroupAction) -> TypeTVerdict:
    """Decide whether R^4/Gamma admits an anti-self-dual Ricci-flat ALE model.

    Positive exactly when the action is in SU(2) (witness: its ADE label) or
    is cyclic of order l*m^2 with weights conjugate to (1, l*m*n - 1)
    (witness: the lexicographically smallest such (l, m, n); the model is
    then a free Z_m-quotient of the type-A_{l*m-1} ALE space).
    """
    if is_subgroup_su2(g):
        return TypeTVerdict(True, witness=dynkin_of_su2(g))
    hits = type_t_factorizations(g)
    if hits:
        return TypeTVerdict(True, witness=hits[0])
    r = g.order
    if _squarefree(r):
        reason = "order not divisible by a square and not in SU(2)"
    else:
        reason = (
            "not in SU(2), and no factorization order = l*m^2 (m >= 2, n < m "
            "coprime) matches the weights up to conjugacy"
        )
    return TypeTVerdict(False, reason=reason)


def _squarefree(r: int) -> bool:
    d = 2
    while d * d <= r:
        if r % (d * d) == 0:
            return False
        d += 1
    return True


def bubble_for(g: GroupAction):
    """Topological model of the ALE space that desingularizes R^4/Gamma.

    Defined in the topology module (it owns the intersection matrices);
    exposed here because the classifier's witness decides which model exists.
    """
    from . import topocalc

    return topocalc.bubble_for(g)


# -- generator-closure order oracle ----------------------------------------

_PHI = (1 + 5 ** 0.5) / 2


def _qmul(p, q):
    w1, x1, y1, z1 = p
    w2, x2, y2, z2 = q
    return (
        w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
        w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
        w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
        w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2,
    )


def _quaternion_generators(g: GroupAction):
    import math

    omega = (0.5, 0.5, 0.5, 0.5)  # 3-fold rotation
    if g.kind == BINARY_DIHEDRAL:
        m = g.dihedral_index - 2
        return [(math.cos(math.pi / m), math.sin(math.pi / m), 0.0, 0.0), (0.0, 0.0, 1.0, 0.0)]
    if g.kind == BINARY_TETRAHEDRAL:
        return [(0.0, 1.0, 0.0, 0.0), omega]
    if g.kind == BINARY_OCTAHEDRAL:
        return [omega, (2 ** -0.5, 2 ** -0.5, 0.0, 0.0)]
    if g.kind == BINARY_ICOSAHEDRAL:
        return [omega, (_PHI / 2, 1 / (2 * _PHI), 0.5, 0.0)]
    raise ValueError("closure oracle is for the quaternionic (non-cyclic) kinds")


def group_order_oracle(g: GroupAction, cap: int = 1000) -> int:
    """Order of a non-cyclic action, by closing its unit-quaternion generators.

    Breadth-first closure under multiplication, deduplicating to 6 decimals
    (distinct elements of these groups are >= 0.6 apart, so no collisions).
    This is the independent check that the stored orders 4(k-2), 24, 48, 120
    are what the presentations actually generate.
    """
    gens = _quaternion_generators(g)

    def key(q):
        return tuple(round(c, 6) + 0.0 for c in q)

    identity = (1.0, 0.0, 0.0, 0.0)
    seen = {key(identity)}
    frontier = [identity]
    while frontier:
        nxt = []
        for a in frontier:
            for gen in gens:
                b = _qmul(a, gen)
                k = key(b)
                if k not in seen:
                    seen.add(k)
                    nxt.append(b)
                    if len(seen) > cap:
                        raise RuntimeError("generator closure exceeded the safety cap")
        frontier = nxt
    return len(seen)


# -- text syntax ------------------------------------------------------------

_CYCLIC_RE = re.compile(r"^\s*1\s*/\s*(\d+)\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*$")
_ADE_RE = re.compile(r"^\s*([ADE])\s*_?\s*(\d+)\s*$")


def parse_singularity(text: str) -> GroupAction:
    """Parse "1/9(1,2)", "A4", "D5", or "E7" into a GroupAction."""
    m = _CYCLIC_RE.match(text)
    if m:
        r, a, b = (int(x) for x in m.groups())
        return GroupAction.cyclic(r, (a, b))
    m = _ADE_RE.match(text)
    if m:
        family, k = m.group(1), int(m.group(2))
        if family == "A":
            if k < 1:
                raise ValueError(f"no A{k} singularity")
            return GroupAction.cyclic(k + 1, (1, k))
        if family == "D":
            if k < 4:
                raise ValueError(f"no D{k} singularity (index starts at 4)")
            return GroupAction.binary_dihedral(k)
        if k == 6:
            return GroupAction.binary_tetrahedral()
        if k == 7:
            return GroupAction.binary_octahedral()
        if k == 8:
            return GroupAction.binary_icosahedral()
        raise ValueError(f"no E{k} singularity")
    raise ValueError(f"cannot parse singularity {text!r}")


def format_singularity(g: GroupAction) -> str:
    """Inverse of parse_singularity; cyclic actions print their given weights."""
    if g.kind == CYCLIC:
        a, b = g.weights
        return f"1/{g.order}({a},{b})"
    if g.kind == BINARY_DIHEDRAL:
        return f"D{g.dihedral_index}"
    return _POLYHEDRAL_DYNKIN[g.kind]
