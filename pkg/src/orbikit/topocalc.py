"""Intersection forms, ALE bubble invariants, and desingularization bookkeeping.

A compact 4-orbifold with isolated quotient singularities R^4/Gamma_k can be
smoothed by excising a cone neighborhood of each singular point and gluing in
an ALE space (a "bubble") asymptotic to the same cone.  Everything here is the
exact integer arithmetic of that operation: Euler characteristic and signature
composition (additive along the S^3/Gamma collars), the negative-definite ADE
intersection matrices of the minimal-resolution bubbles, recognition of the
resulting Del Pezzo diffeotypes by (chi, tau), and composition of nested
bubble trees into a single equivalent bubble.

All functions are pure and work over immutable integer data.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .singgroup import (
    GroupAction,
    conjugate_equal,
    format_singularity,
    is_type_t,
    parse_singularity,
)

Matrix = tuple[tuple[int, ...], ...]

_ADE_LABEL_RE = re.compile(r"^([ADE])(\d+)$")


def _det_exact(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        inv = 1 / rows[col][col]
        for r in range(col + 1, n):
            factor = rows[r][col] * inv
            if factor:
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
    return det


def leading_principal_minors(matrix: Matrix) -> tuple[Fraction, ...]:
    """Exact determinants of the k-by-k upper-left blocks, k = 1..n."""
    n = len(matrix)
    return tuple(
        _det_exact([[Fraction(matrix[i][j]) for j in range(k)] for i in range(k)])
        for k in range(1, n + 1)
    )


def is_negative_definite(matrix: Matrix) -> bool:
    """Exact test: leading principal minors alternate in sign, starting negative."""
    return all(
        (minor > 0 if k % 2 == 0 else minor < 0)
        for k, minor in enumerate(leading_principal_minors(matrix), start=1)
    )


def dynkin_intersection_matrix(label: str) -> Matrix:
    """Intersection matrix of the minimal resolution of an ADE singularity.

    This is minus the simply-laced Cartan matrix: -2 on the diagonal, +1 for
    vertices joined in the Dynkin diagram.  Vertex order: A_k is the path
    1..k; D_k is the path 1..k-2 with vertices k-1 and k both joined to k-2;
    E_n is the path 1..n-1 with vertex n joined to vertex 3.
    """
    m = _ADE_LABEL_RE.match(label.strip())
    if not m:
        raise ValueError(f"not an ADE label: {label!r}")
    family, k = m.group(1), int(m.group(2))
    edges: list[tuple[int, int]] = []
    if family == "A":
        if k < 1:
            raise ValueError(f"no A{k} diagram")
        edges = [(i, i + 1) for i in range(k - 1)]
    elif family == "D":
        if k < 4:
            raise ValueError(f"no D{k} diagram (index starts at 4)")
        edges = [(i, i + 1) for i in range(k - 3)] + [(k - 3, k - 2), (k - 3, k - 1)]
    else:
        if k not in (6, 7, 8):
            raise ValueError(f"no E{k} diagram")
        edges = [(i, i + 1) for i in range(k - 2)] + [(2, k - 1)]
    rows = [[-2 if i == j else 0 for j in range(k)] for i in range(k)]
    for i, j in edges:
        rows[i][j] = rows[j][i] = 1
    return tuple(tuple(r) for r in rows)


@dataclass(frozen=True)
class BubbleModel:
    """Topological model of an ALE bubble: a 4-manifold with one end S^3/Gamma.

    These spaces are connected with b1 = b3 = b4 = 0, so euler = 1 + b2, and
    their intersection form is negative definite with signature = -b2.  The
    matrix is known exactly for the ADE minimal resolutions and for b2 = 0;
    None means "not tracked" (free-quotient bubbles with b2 > 0).
    """

    asymptotic_group: GroupAction
    b2: int
    euler: int
    signature: int
    pi1_order: int
    intersection_matrix: Optional[Matrix] = None
    label: str = ""

    def __post_init__(self):
        if self.b2 < 0:
            raise ValueError("b2 must be non-negative")
        if self.euler != 1 + self.b2:
            raise ValueError(f"euler must be 1 + b2, got {self.euler} with b2={self.b2}")
        if self.signature != -self.b2:
            raise ValueError(f"signature must be -b2, got {self.signature} with b2={self.b2}")
        if self.pi1_order < 1:
            raise ValueError("pi1_order must be positive")
        m = self.intersection_matrix
        if m is not None:
            if len(m) != self.b2 or any(len(row) != self.b2 for row in m):
                raise ValueError(f"intersection matrix must be {self.b2}x{self.b2}")
            if any(m[i][j] != m[j][i] for i in range(self.b2) for j in range(self.b2)):
                raise ValueError("intersection matrix must be symmetric")
            if not is_negative_definite(m):
                raise ValueError("intersection matrix must be negative definite")


def bubble_for(g: GroupAction) -> BubbleModel:
    """The standard ALE bubble desingularizing R^4/Gamma, when one exists.

    ADE groups get their minimal resolution (b2 = rank, intersection form
    minus the Cartan matrix).  Cyclic groups of order l*m^2 in the quotient
    family get the free Z_m-quotient of the A_{lm-1} space: euler l (by
    multiplicativity of chi under free quotients), b2 = l - 1, pi1 of order m.
    Raises for groups with no anti-self-dual Ricci-flat ALE model.
    """
    verdict = is_type_t(g)
    if not verdict.is_type_t:
        raise ValueError(
            f"{format_singularity(g)} bounds no ALE bubble: {verdict.reason}"
        )
    if isinstance(verdict.witness, str):
        label = verdict.witness
        rank = int(label[1:])
        return BubbleModel(
            asymptotic_group=g,
            b2=rank,
            euler=rank + 1,
            signature=-rank,
            pi1_order=1,
            intersection_matrix=dynkin_intersection_matrix(label),
            label=label,
        )
    l, m, n = verdict.witness
    return BubbleModel(
        asymptotic_group=g,
        b2=l - 1,
        euler=l,
        signature=-(l - 1),
        pi1_order=m,
        intersection_matrix=() if l == 1 else None,
        label=f"({l},{m},{n})",
    )


@dataclass(frozen=True)
class OrbifoldSpec:
    """A compact 4-orbifold given by its global invariants and singular points.

    euler_top and signature_top are the Euler characteristic and (rational)
    signature of the underlying space; signature_top is input data, not
    derived.  Each singular point is a (label, GroupAction) pair; actions must
    be free on S^3, which GroupAction construction already guarantees.
    """

    name: str
    euler_top: int
    signature_top: int
    singularities: tuple[tuple[str, GroupAction], ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "singularities", tuple((str(lab), g) for lab, g in self.singularities)
        )
        labels = [lab for lab, _ in self.singularities]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate singular point labels in {self.name!r}")

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "euler_top": self.euler_top,
            "signature_top": self.signature_top,
            "singularities": [[lab, format_singularity(g)] for lab, g in self.singularities],
        }

    @staticmethod
    def from_json_dict(d: dict) -> "OrbifoldSpec":
        return OrbifoldSpec(
            name=d["name"],
            euler_top=int(d["euler_top"]),
            signature_top=int(d["signature_top"]),
            singularities=tuple(
                (lab, parse_singularity(text)) for lab, text in d.get("singularities", [])
            ),
        )


@dataclass(frozen=True)
class DelPezzoType:
    """Diffeotype read off from (chi, tau): S^2 x S^2 or CP2 # l CP2bar."""

    label: str
    ell: Optional[int]
    b_plus: int
    b_minus: int


def del_pezzo_recognition(chi: int, tau: int) -> DelPezzoType:
    """Match (chi, tau) against the closed-up Del Pezzo diffeotypes.

    (4, 0) is S^2 x S^2; (3 + l, 1 - l) with 0 <= l <= 8 is CP2 # l CP2bar.
    Note (4, 0) fits both patterns (l = 1 gives the same pair); the product
    is reported for it.  Also reports b+ = (chi - 2 + tau)/2 and
    b- = (chi - 2 - tau)/2, which satisfy b+ = 1 and b- <= 8 on every match.
    """
    if (chi, tau) == (4, 0):
        return DelPezzoType("S2xS2", None, 1, 1)
    ell = chi - 3
    if 0 <= ell <= 8 and tau == 1 - ell:
        label = "CP2" if ell == 0 else f"CP2#{ell}CP2bar"
        return DelPezzoType(label, ell, 1, ell)
    raise ValueError(
        f"(chi, tau) = ({chi}, {tau}) is not a Del Pezzo diffeotype: "
        "expected (4, 0) or (3 + l, 1 - l) with 0 <= l <= 8"
    )


def _as_int_if_possible(x: Fraction) -> Union[int, Fraction]:
    return int(x) if x.denominator == 1 else x


@dataclass(frozen=True)
class GlueInvariants:
    """Characteristic numbers of the glued-up smooth manifold."""

    name: str
    euler: int
    signature: int
    b2: int
    b_plus: Union[int, Fraction]
    b_minus: Union[int, Fraction]
    c1_squared: int
    c1_in_range: bool
    diffeotype: Optional[str]

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "euler": self.euler,
            "signature": self.signature,
            "b2": self.b2,
            "b_plus": str(self.b_plus) if isinstance(self.b_plus, Fraction) else self.b_plus,
            "b_minus": str(self.b_minus) if isinstance(self.b_minus, Fraction) else self.b_minus,
            "c1_squared": self.c1_squared,
            "c1_in_range": self.c1_in_range,
            "diffeotype": self.diffeotype,
        }


def glue_invariants(
    x: OrbifoldSpec,
    assignment: Mapping[str, Union[BubbleModel, "BubbleTree"]],
    recognize: bool = True,
) -> GlueInvariants:
    """Invariants of the smooth manifold obtained by bubbling off every singularity.

    Each singular point must be assigned a BubbleModel (or a BubbleTree, which
    is composed first) whose asymptotic group matches the point's.  Gluing
    happens along the 3-manifolds S^3/Gamma_k, so chi gains chi(Y_k) - 1 per
    bubble and the signature is exactly additive (Novikov additivity along a
    closed oriented separating 3-manifold; no correction terms since only the
    smooth manifold's invariants are tracked).

    c1_squared = 2 chi + 3 tau; admissible positive-scalar Einstein outcomes
    have it in 1..9, reported by the c1_in_range flag.  b2 assumes b1 = b3 = 0,
    which holds for every space assembled here.
    """
    labels = [lab for lab, _ in x.singularities]
    unknown = set(assignment) - set(labels)
    if unknown:
        raise ValueError(f"assignment names unknown singular points: {sorted(unknown)}")
    chi = x.euler_top
    tau = x.signature_top
    for lab, g in x.singularities:
        if lab not in assignment:
            raise ValueError(f"no bubble assigned to singular point {lab!r}")
        bubble = assignment[lab]
        if isinstance(bubble, BubbleTree):
            bubble = bubble_tree_compose(bubble)
        if not conjugate_equal(bubble.asymptotic_group, g):
            raise ValueError(
                f"bubble does not fit singularity {lab!r}: asymptotic group "
                f"{format_singularity(bubble.asymptotic_group)} vs {format_singularity(g)}"
            )
        chi += bubble.euler - 1
        tau += bubble.signature
    c1sq = 2 * chi + 3 * tau
    b_plus = _as_int_if_possible(Fraction(chi - 2 + tau, 2))
    b_minus = _as_int_if_possible(Fraction(chi - 2 - tau, 2))
    diffeotype = None
    if recognize:
        try:
            diffeotype = del_pezzo_recognition(chi, tau).label
        except ValueError:
            diffeotype = None
    return GlueInvariants(
        name=x.name,
        euler=chi,
        signature=tau,
        b2=chi - 2,
        b_plus=b_plus,
        b_minus=b_minus,
        c1_squared=c1sq,
        c1_in_range=1 <= c1sq <= 9,
        diffeotype=diffeotype,
    )


@dataclass(frozen=True)
class BubbleTree:
    """A nested desingularization: a bubble whose own singular points carry
    deeper bubbles, recursively, each level at a smaller relative scale.

    euler_top / signature_top describe this node's partially-resolved space
    (its residual singular points still present); children are keyed by the
    labels of those points.  scale is the node's relative scale t in (0, 1),
    so composed scales T = t_0 t_1 ... strictly decrease with depth.  Leaves
    must be smooth: a deepest bubble with singular points is rejected at
    composition time.
    """

    asymptotic_group: GroupAction
    euler_top: int
    signature_top: int
    scale: float = 0.5
    singularities: tuple[tuple[str, GroupAction], ...] = ()
    children: tuple[tuple[str, "BubbleTree"], ...] = ()

    def __post_init__(self):
        if not (0.0 < self.scale < 1.0):
            raise ValueError(f"relative scale must lie in (0, 1), got {self.scale}")
        object.__setattr__(
            self, "singularities", tuple((str(lab), g) for lab, g in self.singularities)
        )
        object.__setattr__(self, "children", tuple(self.children))
        labels = [lab for lab, _ in self.singularities]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate singular point labels in bubble tree node")
        child_labels = [lab for lab, _ in self.children]
        if len(set(child_labels)) != len(child_labels):
            raise ValueError("duplicate child labels in bubble tree node")

    def depth(self) -> int:
        return 1 + max((child.depth() for _, child in self.children), default=0)

    def composed_scales(self) -> dict[tuple[str, ...], float]:
        """Composed scale T = product of node scales, per root-to-node path."""
        out = {(): self.scale}
        for lab, child in self.children:
            for path, t in child.composed_scales().items():
                out[(lab,) + path] = self.scale * t
        return out


def bubble_tree_compose(tree: BubbleTree) -> BubbleModel:
    """Collapse a bubble tree to the single bubble it is equivalent to.

    chi composes exactly like gluing (each child contributes chi - 1), the
    signature adds, and the asymptotic group is the root's.  The result is
    independent of child order and of whether subtrees are composed first.
    Rejects incomplete trees (an interior singular point with no child),
    stray children, and singular leaves.
    """
    childmap = dict(tree.children)
    labels = [lab for lab, _ in tree.singularities]
    stray = set(childmap) - set(labels)
    if stray:
        raise ValueError(f"tree has children at undeclared points: {sorted(stray)}")
    if not tree.children and tree.singularities:
        raise ValueError(
            "deepest bubbles must be smooth: leaf still lists singular points "
            f"{sorted(labels)}"
        )
    missing = set(labels) - set(childmap)
    if missing:
        raise ValueError(f"tree incomplete: unmatched singular points {sorted(missing)}")
    chi = tree.euler_top
    tau = tree.signature_top
    for lab, g in tree.singularities:
        child = bubble_tree_compose(childmap[lab])
        if not conjugate_equal(child.asymptotic_group, g):
            raise ValueError(
                f"bubble does not fit singularity {lab!r}: asymptotic group "
                f"{format_singularity(child.asymptotic_group)} vs {format_singularity(g)}"
            )
        chi += child.euler - 1
        tau += child.signature
    b2 = chi - 1
    if tau != -b2:
        raise ValueError(
            f"composed bubble violates ALE invariants: chi={chi}, tau={tau}, "
            "need tau = 1 - chi"
        )
    reference = bubble_for(tree.asymptotic_group)
    matrix = (
        reference.intersection_matrix
        if (reference.euler, reference.signature) == (chi, tau)
        else None
    )
    return BubbleModel(
        asymptotic_group=tree.asymptotic_group,
        b2=b2,
        euler=chi,
        signature=tau,
        pi1_order=reference.pi1_order,
        intersection_matrix=matrix,
        label=reference.label,
    )


def oss_target_prediction(diffeotype: Union[str, DelPezzoType, int]):
    """Allowed singularity types on Einstein limits with the given diffeotype.

    Accepts a DelPezzoType, its label string, or the blow-up count l directly;
    only CP2 # l CP2bar with 5 <= l <= 8 admits singular limits (degree
    c1^2 = 9 - l between 1 and 4).  Delegates to the admissibility module,
    which derives the list from the classifier and the volume order bound.
    """
    if isinstance(diffeotype, DelPezzoType):
        ell = diffeotype.ell
    elif isinstance(diffeotype, int):
        ell = diffeotype
    else:
        m = re.match(r"^CP2#(\d+)CP2bar$", diffeotype.strip())
        ell = int(m.group(1)) if m else None
    if ell is None or not (5 <= ell <= 8):
        raise ValueError(
            f"no singular admissible limits predicted for diffeotype {diffeotype!r}"
        )
    from . import admiss

    return admiss.enumerate_allowed(9 - ell)


def invariants_table_csv(rows: Sequence[GlueInvariants]) -> str:
    """Render glue invariants as CSV (header: name,chi,tau,b_plus,b_minus,c1sq,diffeotype)."""
    lines = ["name,chi,tau,b_plus,b_minus,c1sq,diffeotype"]
    for r in rows:
        lines.append(
            f"{r.name},{r.euler},{r.signature},{r.b_plus},{r.b_minus},"
            f"{r.c1_squared},{r.diffeotype or ''}"
        )
    return "\n".join(lines) + "\n"
