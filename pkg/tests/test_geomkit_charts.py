"""Chart library: domains, exact derivatives, Kahler forms, config loading."""
import numpy as np
import pytest

from orbikit.geomkit import (
    BUILTIN_CHARTS,
    ChartDomainError,
    builtin_chart,
    chart_from_config,
    eguchi_hanson,
    euclidean,
    flat_quotient,
    fubini_study,
    kahler_two_form,
    polynomial_metric,
    rescaled,
    round_sphere,
    s2xs2,
    sphere_z2_quotient,
    with_orientation,
)
from orbikit.singgroup import GroupAction

P = np.array([0.23, -0.11, 0.17, 0.05])


def fd_dg(m, p, h=1e-5):
    out = np.zeros((4, 4, 4))
    for k in range(4):
        e = np.zeros(4)
        e[k] = h
        out[k] = (m.components(p + e) - m.components(p - e)) / (2 * h)
    return out


def test_builtin_registry():
    assert set(BUILTIN_CHARTS) == {
        "euclidean",
        "round_s4",
        "s4_mod_z2",
        "fubini_study",
        "s2xs2",
        "eguchi_hanson",
    }
    for name in sorted(BUILTIN_CHARTS):
        m = builtin_chart(name)
        g = m.components(np.array([0.5, 0.1, -0.2, 0.3]))
        assert g.shape == (4, 4)
        assert np.allclose(g, g.T)
        assert np.all(np.linalg.eigvalsh(g) > 0)
    with pytest.raises(ValueError):
        builtin_chart("nope")


def test_euclidean_is_identity():
    m = euclidean()
    assert np.array_equal(m.components(P), np.eye(4))
    assert m.orientation == 1
    assert m.quotient_group is None


@pytest.mark.parametrize(
    "m",
    [
        round_sphere(1.0),
        round_sphere(2.5),
        fubini_study(),
        fubini_study(scale=3.0),
        s2xs2(1.0, 1.0),
        s2xs2(1.0, 2.0),
        eguchi_hanson(),
        eguchi_hanson(a=1.3),
        sphere_z2_quotient(1.0),
    ],
    ids=lambda m: m.name,
)
def test_analytic_first_derivatives_match_fd(m):
    # every curved builtin carries exact first derivatives; they must agree
    # with plain central differences of the components
    p = np.array([0.31, -0.12, 0.22, 0.41])
    exact = m.d_components(p)
    approx = fd_dg(m, p)
    assert np.abs(exact - approx).max() < 1e-8 * max(1.0, np.abs(exact).max())


def test_round_sphere_conformal_factor():
    r = 2.0
    m = round_sphere(r)
    u = float(P @ P)
    f = (2 * r / (1 + u)) ** 2
    assert np.allclose(m.components(P), f * np.eye(4))


def test_sphere_quotient_carries_group():
    m = sphere_z2_quotient(1.0)
    assert isinstance(m.quotient_group, GroupAction)
    assert m.quotient_group.order == 2
    assert np.allclose(m.components(P), round_sphere(1.0).components(P))


def test_eguchi_hanson_domain():
    m = eguchi_hanson(a=1.0)
    assert m.in_domain(np.array([0.5, 0.0, 0.0, 0.0]))
    assert not m.in_domain(np.array([0.05, 0.05, 0.0, 0.0]))
    assert m.quotient_group.order == 2
    with pytest.raises(ValueError):
        eguchi_hanson(a=0.0)


def test_flat_quotient_requires_free_action():
    m = flat_quotient(GroupAction.cyclic(4, (1, 1)))
    assert np.array_equal(m.components(P), np.eye(4))
    assert m.quotient_group.order == 4


def test_rescaled_and_orientation():
    m = fubini_study()
    r = rescaled(m, 4.0)
    assert np.allclose(r.components(P), 4.0 * m.components(P))
    assert np.allclose(r.d_components(P), 4.0 * m.d_components(P))
    rev = with_orientation(m, -1)
    assert rev.orientation == -1
    assert np.allclose(rev.components(P), m.components(P))
    with pytest.raises(ValueError):
        with_orientation(m, 0)
    with pytest.raises(ValueError):
        rescaled(m, -1.0)


def test_kahler_form_euclidean():
    om = kahler_two_form(euclidean())
    w = om(np.zeros(4))
    expect = np.zeros((4, 4))
    expect[0, 1] = 1.0
    expect[1, 0] = -1.0
    expect[2, 3] = 1.0
    expect[3, 2] = -1.0
    assert np.allclose(w, expect)


def test_kahler_form_fubini_study_closed_known_value():
    om = kahler_two_form(fubini_study())
    w = om(P)
    assert np.allclose(w, -w.T)
    assert np.abs(w).max() > 0


def test_kahler_form_on_product_metric():
    # block-scalar metrics stay Hermitian for the standard pairing
    # x0 + i x1, x2 + i x3, even with unequal factors
    om = kahler_two_form(s2xs2(1.0, 2.0))
    w = om(np.array([0.3, 0.2, 0.1, 0.4]))
    assert np.allclose(w, -w.T)


def test_kahler_form_rejects_non_hermitian():
    from orbikit.geomkit import ChartMetric

    g = np.eye(4)
    g[0, 2] = g[2, 0] = 0.3
    bad = ChartMetric(name="skew", components=lambda p: g)
    with pytest.raises(ValueError):
        kahler_two_form(bad)(np.array([0.3, 0.2, 0.1, 0.4]))


def test_polynomial_metric_properties():
    m = polynomial_metric(seed=7)
    g = m.components(P)
    assert np.allclose(g, g.T)
    assert np.all(np.linalg.eigvalsh(g) > 0.5)
    exact = m.d_components(P)
    assert np.abs(exact - fd_dg(m, P)).max() < 1e-8
    # determinism
    again = polynomial_metric(seed=7)
    assert np.array_equal(again.components(P), g)
    other = polynomial_metric(seed=8)
    assert not np.array_equal(other.components(P), g)
    with pytest.raises(ValueError):
        polynomial_metric(seed=1, amplitude=0.5)


def test_polynomial_metric_domain_box():
    m = polynomial_metric(seed=3, box=0.6)
    assert m.in_domain(np.array([0.59, 0.0, 0.0, 0.0]))
    assert not m.in_domain(np.array([0.61, 0.0, 0.0, 0.0]))


def test_chart_from_config_roundtrip():
    e = "1 + 0.1*sin(x0)"
    cfg = {
        "name": "wavy",
        "components": [
            [e, "0", "0", "0"],
            ["0", "1", "0", "0"],
            ["0", "0", "1", "0"],
            ["0", "0", "0", "1"],
        ],
        "orientation": -1,
        "domain_box": [[-1, 1], [-1, 1], [-1, 1], [-1, 1]],
        "quotient": "1/2(1,1)",
    }
    m = chart_from_config(cfg)
    assert m.name == "wavy"
    assert m.orientation == -1
    assert m.quotient_group.order == 2
    g = m.components(P)
    assert g[0, 0] == pytest.approx(1 + 0.1 * np.sin(P[0]))
    assert m.in_domain(np.zeros(4))
    assert not m.in_domain(np.array([1.5, 0, 0, 0]))


def test_chart_from_config_rejects_asymmetric_and_unsafe():
    base = [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]]
    bad = [row[:] for row in base]
    bad[0][1] = "1"
    with pytest.raises(ValueError):
        chart_from_config({"name": "x", "components": bad})
    evil = [row[:] for row in base]
    evil[0][0] = "__import__('os').getpid()"
    with pytest.raises(Exception):
        chart_from_config({"name": "x", "components": evil}).components(P)
