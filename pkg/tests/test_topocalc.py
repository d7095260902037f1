"""Intersection matrices, bubbles, gluing arithmetic, and bubble trees.

Independent oracles used here: a cofactor-expansion determinant (against the
Gaussian-elimination minors in the library), numpy eigenvalues for negative
definiteness, and an explicit cell-count Mayer-Vietoris computation for the
Euler characteristic of a glued toy model.
"""
import random
from fractions import Fraction

import numpy as np
import pytest

from orbikit.singgroup import GroupAction, parse_singularity
from orbikit.topocalc import (
    BubbleModel,
    BubbleTree,
    OrbifoldSpec,
    bubble_for,
    bubble_tree_compose,
    del_pezzo_recognition,
    dynkin_intersection_matrix,
    glue_invariants,
    invariants_table_csv,
    is_negative_definite,
    leading_principal_minors,
    oss_target_prediction,
)


def det_cofactor(m):
    """Oracle: determinant by first-row cofactor expansion, exact integers."""
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * m[0][j] * det_cofactor(minor)
    return total


# -- Dynkin intersection matrices --

def test_a1_a2_matrices():
    assert dynkin_intersection_matrix("A1") == ((-2,),)
    assert dynkin_intersection_matrix("A2") == ((-2, 1), (1, -2))


@pytest.mark.parametrize(
    "label,want_det",
    [("A1", -2), ("A2", 3), ("A3", -4), ("A7", -8), ("D4", 4), ("D5", -4),
     ("D6", 4), ("E6", 3), ("E7", -2), ("E8", 1)],
)
def test_determinants_match_cofactor_oracle(label, want_det):
    m = [list(r) for r in dynkin_intersection_matrix(label)]
    d = det_cofactor(m)
    assert d == want_det
    assert leading_principal_minors(tuple(tuple(r) for r in m))[-1] == Fraction(d)


@pytest.mark.parametrize("label", ["A%d" % k for k in range(1, 13)]
                         + ["D%d" % k for k in range(4, 13)] + ["E6", "E7", "E8"])
def test_negative_definite_exact_and_float(label):
    m = dynkin_intersection_matrix(label)
    assert is_negative_definite(m)
    # independent float check
    eigs = np.linalg.eigvalsh(np.array(m, dtype=float))
    assert np.all(eigs < 0)
    # symmetry and degree counts: A path has k-1 edges, D and E are trees too
    arr = np.array(m)
    assert np.array_equal(arr, arr.T)
    k = len(m)
    assert int(np.sum(arr) ) == -2 * k + 2 * (k - 1)


def test_matrix_label_errors():
    for bad in ["A0", "D3", "E5", "E9", "F4", "BC2", ""]:
        with pytest.raises(ValueError):
            dynkin_intersection_matrix(bad)


def test_non_negative_definite_rejected():
    assert not is_negative_definite(((2,),))
    assert not is_negative_definite(((-2, 3), (3, -2)))
    with pytest.raises(ValueError, match="negative definite"):
        BubbleModel(
            asymptotic_group=GroupAction.cyclic(2, (1, 1)),
            b2=1, euler=2, signature=-1, pi1_order=1,
            intersection_matrix=((2,),),
        )


# -- bubbles --

def test_bubble_a1():
    b = bubble_for(parse_singularity("A1"))
    assert (b.b2, b.euler, b.signature, b.pi1_order) == (1, 2, -1, 1)
    assert b.intersection_matrix == ((-2,),)


def test_bubble_e8():
    b = bubble_for(parse_singularity("E8"))
    assert (b.b2, b.euler, b.signature, b.pi1_order) == (8, 9, -8, 1)


def test_bubble_quotient_family():
    b = bubble_for(parse_singularity("1/4(1,1)"))
    assert (b.b2, b.euler, b.signature, b.pi1_order) == (0, 1, 0, 2)
    assert b.intersection_matrix == ()
    b = bubble_for(parse_singularity("1/9(1,2)"))
    assert (b.b2, b.euler, b.signature, b.pi1_order) == (0, 1, 0, 3)
    b = bubble_for(parse_singularity("1/8(1,3)"))
    assert (b.b2, b.euler, b.signature, b.pi1_order) == (1, 2, -1, 2)
    assert b.intersection_matrix is None  # quotient with b2 > 0: not tracked


def test_bubble_quotient_chi_multiplicativity():
    # chi of the free Z_m quotient of A_{lm-1} (chi = lm) must be l
    for l in (1, 2, 3):
        for m in (2, 3, 5):
            g = GroupAction.cyclic(l * m * m, (1, l * m - 1))
            cover = bubble_for(parse_singularity(f"A{l * m - 1}"))
            quot = bubble_for(g)
            assert cover.euler == quot.euler * m
            assert quot.pi1_order == m


def test_bubble_refuses_non_type_t():
    with pytest.raises(ValueError, match="no ALE bubble"):
        bubble_for(parse_singularity("1/5(1,2)"))


def test_bubble_model_invariants_enforced():
    g = GroupAction.cyclic(2, (1, 1))
    with pytest.raises(ValueError, match="euler"):
        BubbleModel(asymptotic_group=g, b2=1, euler=3, signature=-1, pi1_order=1)
    with pytest.raises(ValueError, match="signature"):
        BubbleModel(asymptotic_group=g, b2=1, euler=2, signature=1, pi1_order=1)


# -- gluing --

def two_a1_spec():
    return OrbifoldSpec(
        name="toy",
        euler_top=6,
        signature_top=-2,
        singularities=(("s0", parse_singularity("A1")), ("s1", parse_singularity("A1"))),
    )


def test_glue_two_a1():
    x = two_a1_spec()
    a1 = bubble_for(parse_singularity("A1"))
    inv = glue_invariants(x, {"s0": a1, "s1": a1})
    assert (inv.euler, inv.signature, inv.c1_squared) == (8, -4, 4)
    assert (inv.b_plus, inv.b_minus) == (1, 5)
    assert inv.diffeotype == "CP2#5CP2bar"
    assert inv.c1_in_range


def test_glue_empty_assignment_is_identity():
    x = OrbifoldSpec(name="smooth", euler_top=4, signature_top=0)
    inv = glue_invariants(x, {})
    assert (inv.euler, inv.signature, inv.c1_squared) == (4, 0, 8)
    assert inv.diffeotype == "S2xS2"


def test_glue_group_mismatch():
    x = two_a1_spec()
    a2 = bubble_for(parse_singularity("A2"))
    a1 = bubble_for(parse_singularity("A1"))
    with pytest.raises(ValueError, match="does not fit"):
        glue_invariants(x, {"s0": a1, "s1": a2})


def test_glue_missing_and_unknown_assignments():
    x = two_a1_spec()
    a1 = bubble_for(parse_singularity("A1"))
    with pytest.raises(ValueError, match="no bubble assigned"):
        glue_invariants(x, {"s0": a1})
    with pytest.raises(ValueError, match="unknown singular points"):
        glue_invariants(x, {"s0": a1, "s1": a1, "zz": a1})


def test_glue_accepts_conjugate_presentation():
    x = OrbifoldSpec(
        name="conj", euler_top=4, signature_top=-1,
        singularities=(("s", GroupAction.cyclic(9, (2, 4))),),
    )
    bubble = bubble_for(GroupAction.cyclic(9, (1, 2)))
    inv = glue_invariants(x, {"s": bubble})
    assert inv.euler == 4


def test_glue_chi_against_cell_count_oracle():
    """Mayer-Vietoris on a toy model with explicit cell counts.

    M = (X minus an open cone) union_{S^3/Gamma} Y.  chi is the alternating
    cell-count sum; the intersection deformation-retracts to the 3-manifold
    S^3/Gamma, which has chi = 0, and removing the open cone kills exactly
    the cone point's cell.  Realized as cell vectors (n0, n1, n2, n3, n4).
    """

    def chi_of(cells):
        return sum((-1) ** d * n for d, n in enumerate(cells))

    s4 = (1, 0, 0, 0, 1)            # e0 + e4
    cone_point = (1, 0, 0, 0, 0)    # the orbifold point
    lens = (1, 1, 1, 1, 0)          # any closed orientable 3-manifold: chi 0
    assert chi_of(lens) == 0
    x_punctured = tuple(a - b for a, b in zip(s4, cone_point))  # remove the point's cell
    a1_bubble = (1, 0, 1, 0, 0)     # retracts to S^2
    chi_glued = chi_of(x_punctured) + chi_of(a1_bubble) - chi_of(lens)

    x = OrbifoldSpec(
        name="s4_one_a1", euler_top=2, signature_top=0,
        singularities=(("s", parse_singularity("A1")),),
    )
    inv = glue_invariants(x, {"s": bubble_for(parse_singularity("A1"))}, recognize=False)
    assert inv.euler == chi_glued == 3


# -- Del Pezzo recognition --

def test_del_pezzo_table():
    t = del_pezzo_recognition(8, -4)
    assert t.label == "CP2#5CP2bar" and t.ell == 5 and (t.b_plus, t.b_minus) == (1, 5)
    t = del_pezzo_recognition(4, 0)
    assert t.label == "S2xS2" and t.ell is None and (t.b_plus, t.b_minus) == (1, 1)
    t = del_pezzo_recognition(3, 1)
    assert t.label == "CP2" and t.ell == 0 and t.b_minus == 0
    t = del_pezzo_recognition(11, -7)
    assert t.label == "CP2#8CP2bar" and t.b_minus == 8


def test_del_pezzo_rejections():
    with pytest.raises(ValueError, match="not a Del Pezzo"):
        del_pezzo_recognition(12, -8)  # l = 9 out of range
    with pytest.raises(ValueError, match="not a Del Pezzo"):
        del_pezzo_recognition(5, 0)
    with pytest.raises(ValueError, match="not a Del Pezzo"):
        del_pezzo_recognition(2, 0)


def test_b_plus_is_one_on_every_match():
    for ell in range(9):
        t = del_pezzo_recognition(3 + ell, 1 - ell)
        assert t.b_plus == 1 and t.b_minus == ell <= 8


# -- bubble trees --

def a3_partial_tree(scale=0.5, child_scale=0.3):
    """A3 cone partially resolved, one residual A1 point carrying a leaf."""
    leaf = BubbleTree(
        asymptotic_group=parse_singularity("A1"),
        euler_top=2, signature_top=-1, scale=child_scale,
    )
    return BubbleTree(
        asymptotic_group=parse_singularity("A3"),
        euler_top=3, signature_top=-2, scale=scale,
        singularities=(("q", parse_singularity("A1")),),
        children=(("q", leaf),),
    )


def test_single_node_tree_composes_to_its_model():
    leaf = BubbleTree(
        asymptotic_group=parse_singularity("A1"),
        euler_top=2, signature_top=-1, scale=0.25,
    )
    assert bubble_tree_compose(leaf) == bubble_for(parse_singularity("A1"))


def test_two_level_tree_matches_direct_bubble():
    composed = bubble_tree_compose(a3_partial_tree())
    direct = bubble_for(parse_singularity("A3"))
    assert composed == direct
    assert composed.intersection_matrix == dynkin_intersection_matrix("A3")


def test_tree_rejects_stray_child():
    # attaching a child to a point the (smooth) root never declared
    leaf = BubbleTree(asymptotic_group=parse_singularity("A1"),
                      euler_top=2, signature_top=-1, scale=0.3)
    smooth_root = BubbleTree(
        asymptotic_group=parse_singularity("1/4(1,1)"),
        euler_top=1, signature_top=0, scale=0.5,
        children=(("ghost", leaf),),
    )
    with pytest.raises(ValueError, match="undeclared"):
        bubble_tree_compose(smooth_root)


def test_tree_rejects_singular_leaf():
    leaf = BubbleTree(
        asymptotic_group=parse_singularity("A3"),
        euler_top=3, signature_top=-2, scale=0.5,
        singularities=(("q", parse_singularity("A1")),),
    )
    with pytest.raises(ValueError, match="must be smooth"):
        bubble_tree_compose(leaf)


def test_tree_rejects_missing_interior_child():
    leaf = BubbleTree(asymptotic_group=parse_singularity("A1"),
                      euler_top=2, signature_top=-1, scale=0.3)
    root = BubbleTree(
        asymptotic_group=parse_singularity("A5"),
        euler_top=4, signature_top=-3, scale=0.5,
        singularities=(("q0", parse_singularity("A1")),
                       ("q1", parse_singularity("A1"))),
        children=(("q0", leaf),),
    )
    with pytest.raises(ValueError, match="tree incomplete"):
        bubble_tree_compose(root)


def test_tree_scale_validation_and_composed_scales():
    with pytest.raises(ValueError, match="scale"):
        BubbleTree(asymptotic_group=parse_singularity("A1"),
                   euler_top=2, signature_top=-1, scale=1.5)
    tree = a3_partial_tree(scale=0.5, child_scale=0.3)
    scales = tree.composed_scales()
    assert scales[()] == 0.5
    assert scales[("q",)] == pytest.approx(0.15)
    # composed scales strictly decrease with depth
    assert scales[("q",)] < scales[()]
    assert tree.depth() == 2


def test_compose_then_glue_equals_glue_at_once():
    x = OrbifoldSpec(
        name="deep", euler_top=6, signature_top=-1,
        singularities=(("s", parse_singularity("A3")),),
    )
    via_tree = glue_invariants(x, {"s": a3_partial_tree()})
    via_model = glue_invariants(x, {"s": bubble_for(parse_singularity("A3"))})
    assert via_tree == via_model


def random_two_level_tree(rng):
    """Consistent random partial resolution of a random A_k cone."""
    k = rng.randint(2, 10)
    residual = []
    budget = k
    while budget > 1 and rng.random() < 0.7:
        r = rng.randint(1, budget - 1)
        residual.append(r)
        budget -= r
    singular = tuple(
        (f"p{i}", parse_singularity(f"A{r}")) for i, r in enumerate(residual)
    )
    children = tuple(
        (f"p{i}", BubbleTree(
            asymptotic_group=parse_singularity(f"A{r}"),
            euler_top=r + 1, signature_top=-r,
            scale=rng.uniform(0.05, 0.95),
        ))
        for i, r in enumerate(residual)
    )
    total_residual = sum(residual)
    return BubbleTree(
        asymptotic_group=parse_singularity(f"A{k}"),
        euler_top=k + 1 - total_residual,
        signature_top=-(k - total_residual),
        scale=rng.uniform(0.05, 0.95),
        singularities=singular,
        children=children,
    ), k


def test_randomized_trees_compose_order_independently():
    rng = random.Random(20240817)
    for _ in range(50):
        tree, k = random_two_level_tree(rng)
        composed = bubble_tree_compose(tree)
        assert composed == bubble_for(parse_singularity(f"A{k}"))
        perm = list(range(len(tree.children)))
        rng.shuffle(perm)
        shuffled = BubbleTree(
            asymptotic_group=tree.asymptotic_group,
            euler_top=tree.euler_top,
            signature_top=tree.signature_top,
            scale=tree.scale,
            singularities=tuple(tree.singularities[i] for i in perm),
            children=tuple(tree.children[i] for i in perm),
        )
        assert bubble_tree_compose(shuffled) == composed


# -- predictions and CSV --

def test_oss_target_prediction_inputs():
    by_ell = oss_target_prediction(5)
    by_label = oss_target_prediction("CP2#5CP2bar")
    by_type = oss_target_prediction(del_pezzo_recognition(8, -4))
    assert by_ell == by_label == by_type
    assert [g.order for g in by_ell] == [2]
    with pytest.raises(ValueError, match="no singular admissible limits"):
        oss_target_prediction("S2xS2")
    with pytest.raises(ValueError, match="no singular admissible limits"):
        oss_target_prediction(4)


def test_invariants_csv():
    x = two_a1_spec()
    a1 = bubble_for(parse_singularity("A1"))
    inv = glue_invariants(x, {"s0": a1, "s1": a1})
    text = invariants_table_csv([inv])
    lines = text.strip().splitlines()
    assert lines[0] == "name,chi,tau,b_plus,b_minus,c1sq,diffeotype"
    assert lines[1] == "toy,8,-4,1,5,4,CP2#5CP2bar"


def test_orbifold_spec_json_round_trip():
    x = two_a1_spec()
    assert OrbifoldSpec.from_json_dict(x.to_json_dict()) == x
