"""Order bounds and the derived lists of allowed singularities by degree."""
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbikit.admiss import (
    check_orbifold,
    cp1xcp1_quotient_family,
    cp2_quotient_family,
    display_label,
    enumerate_allowed,
    order_bound,
)
from orbikit.singgroup import GroupAction, is_type_t, parse_singularity
from orbikit.topocalc import OrbifoldSpec


def labels(actions):
    return {display_label(g) for g in actions}


# -- order bound --

def test_order_bound_values():
    assert order_bound(4) == 3
    assert order_bound(1) == 12
    assert order_bound(9) == Fraction(4, 3)
    assert order_bound(5) == Fraction(12, 5)


def test_order_bound_range():
    for bad in (0, 10, -1):
        with pytest.raises(ValueError, match="1..9"):
            order_bound(bad)


def test_bound_is_strict():
    # D5 has order 12, exactly the degree-1 bound: it must NOT be allowed
    assert "D5" not in labels(enumerate_allowed(1))
    x = OrbifoldSpec(name="d5", euler_top=5, signature_top=-4,
                     singularities=(("s", parse_singularity("D5")),))
    verdict = check_orbifold(x, 1)
    assert not verdict.overall
    lab, type_t, order_ok = verdict.per_singularity[0]
    assert type_t.is_type_t and not order_ok


# -- the four derived lists --

def test_degree_4_list():
    assert labels(enumerate_allowed(4)) == {"A1"}


def test_degree_3_list():
    assert labels(enumerate_allowed(3)) == {"A1", "A2"}


def test_degree_2_list():
    assert labels(enumerate_allowed(2)) == {"A1", "A2", "A3", "A4", "1/4(1,1)"}


def test_degree_1_list():
    want = {f"A{k}" for k in range(1, 11)} | {"D4", "1/4(1,1)", "1/8(1,3)", "1/9(1,2)"}
    assert labels(enumerate_allowed(1)) == want


def test_lists_are_nested():
    lists = {d: {g.conjugacy_key() for g in enumerate_allowed(d)} for d in (1, 2, 3, 4)}
    assert lists[4] <= lists[3] <= lists[2] <= lists[1]


def test_enumerate_deduplicates_and_sorts():
    out = enumerate_allowed(1)
    keys = [g.conjugacy_key() for g in out]
    assert len(keys) == len(set(keys))
    assert [g.order for g in out] == sorted(g.order for g in out)


def test_enumerate_rejects_bad_degree():
    for bad in (0, 5, -2):
        with pytest.raises(ValueError, match="degree"):
            enumerate_allowed(bad)


@given(st.integers(min_value=1, max_value=4))
@settings(max_examples=20, deadline=None)
def test_enumerated_actions_satisfy_both_constraints(degree):
    bound = order_bound(degree)
    for g in enumerate_allowed(degree):
        assert g.order < bound
        assert is_type_t(g).is_type_t


# -- named families --

@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_cp2_family_verdicts(p):
    x = cp2_quotient_family(p)
    verdict = check_orbifold(x, 1)
    type_t_flags = [v.is_type_t for _, v, _ in verdict.per_singularity]
    assert sorted(type_t_flags) == [False, False, True]
    # the type-T point is the A_{p-1} one
    for lab, v, _ in verdict.per_singularity:
        if v.is_type_t:
            assert v.witness == f"A{p - 1}"
        else:
            assert v.reason == "order not divisible by a square and not in SU(2)"


def test_cp2_family_rejects_bad_p():
    for bad in (4, 6, 9, 2, 3):
        with pytest.raises(ValueError, match="prime p >= 5"):
            cp2_quotient_family(bad)


def test_cp1xcp1_family_z3():
    x = cp1xcp1_quotient_family(3)
    assert (x.euler_top, x.signature_top) == (4, 0)
    assert len(x.singularities) == 4
    verdict = check_orbifold(x, 8)
    type_t_flags = [v.is_type_t for _, v, _ in verdict.per_singularity]
    assert sorted(type_t_flags) == [False, False, True, True]
    assert not verdict.overall


@pytest.mark.parametrize("k", [3, 5, 6, 7, 9, 12])
def test_cp1xcp1_family_always_two_failures(k):
    verdict = check_orbifold(cp1xcp1_quotient_family(k), 8)
    assert sum(1 for _, v, _ in verdict.per_singularity if not v.is_type_t) == 2


def test_cp1xcp1_excluded_k():
    # k=2 and k=4 are the orders where 1/k(1,1) is itself type T
    assert is_type_t(GroupAction.cyclic(2, (1, 1))).is_type_t
    assert is_type_t(GroupAction.cyclic(4, (1, 1))).is_type_t
    for k in (2, 4):
        with pytest.raises(ValueError, match="excluded"):
            cp1xcp1_quotient_family(k)
    with pytest.raises(ValueError):
        cp1xcp1_quotient_family(1)


def test_one_one_weights_type_t_only_at_2_and_4():
    hits = [k for k in range(2, 40)
            if is_type_t(GroupAction.cyclic(k, (1, 1))).is_type_t]
    assert hits == [2, 4]


# -- aggregate verdict --

def test_single_a1_at_degree_4_passes():
    x = OrbifoldSpec(name="one_a1", euler_top=5, signature_top=-1,
                     singularities=(("s", parse_singularity("A1")),))
    verdict = check_orbifold(x, 4)
    assert verdict.overall
    assert verdict.bound == 3


def test_verdict_json_shape():
    x = OrbifoldSpec(name="one_a1", euler_top=5, signature_top=-1,
                     singularities=(("s", parse_singularity("A1")),))
    d = check_orbifold(x, 4).to_json_dict()
    assert d["overall"] is True
    assert d["bound"] == "3"
    assert d["per_singularity"][0]["label"] == "s"
    assert d["per_singularity"][0]["type_t"]["witness"] == "A1"
