import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schwarzlab.errors import (DomainError, InvalidInput, NonIntegrable,
                               OutOfRange, ParameterOutOfRange)
from schwarzlab.lemmas import psi_family
from schwarzlab.metrics import (HTransform, Metric1D, constant_metric,
                                cosine_metric, curvature_at, exponential_metric,
                                half_plane_metric, hyperbolic_metric, inverse_H,
                                log_concavity_report, mass, metric_from_json,
                                mollified_density_exact, mollify, secant_metric,
                                tabulated_metric, tent_metric, transform_H,
                                transform_table)

INTERIOR = np.linspace(-0.97, 0.97, 99)


# ---------------------------------------------------------------------------
# curvature
# ---------------------------------------------------------------------------

def test_curvature_hyperbolic_closed_form():
    # -(1/R^2)(R'/R)' for R = 1/(1-u^2) is -2(1+u^2)
    m = hyperbolic_metric()
    for u in INTERIOR:
        assert curvature_at(m, u) == pytest.approx(-2.0 * (1 + u * u), abs=1e-10)


def test_curvature_constant_zero():
    assert curvature_at(constant_metric(), 0.37) == pytest.approx(0.0, abs=1e-15)


def test_curvature_secant():
    assert curvature_at(secant_metric(), 0.3) == pytest.approx(-math.pi ** 2 / 4, abs=1e-10)


def test_curvature_cosine_at_origin():
    # hand differentiation gives (pi^2/4) sec^4(pi u / 2)
    assert curvature_at(cosine_metric(), 0.0) == pytest.approx(math.pi ** 2 / 4, abs=1e-10)
    u = 0.4
    expected = math.pi ** 2 / 4 / math.cos(math.pi * u / 2) ** 4
    assert curvature_at(cosine_metric(), u) == pytest.approx(expected, rel=1e-10)


def test_curvature_numeric_path_agrees_with_analytic():
    for m in (hyperbolic_metric(), cosine_metric(), exponential_metric(1.5),
              secant_metric()):
        for u in np.linspace(-0.9, 0.9, 33):
            a = curvature_at(m, u)
            n = curvature_at(m, u, force_numeric=True)
            assert n == pytest.approx(a, abs=1e-6, rel=1e-6)


def test_curvature_outside_domain_raises():
    with pytest.raises(DomainError):
        curvature_at(cosine_metric(), 1.0)
    with pytest.raises(DomainError):
        curvature_at(half_plane_metric(), -0.5)


def test_half_plane_curvature_identity():
    # -(log R)'' = (1/4) csch(x/2)^2, so K = that / R^2
    m = half_plane_metric()
    x = 2.0
    expected = 0.25 / math.sinh(1.0) ** 2 / float(m.density(x)) ** 2
    assert curvature_at(m, x) == pytest.approx(expected, rel=1e-9)


# ---------------------------------------------------------------------------
# mass and H
# ---------------------------------------------------------------------------

def test_mass_values():
    assert mass(constant_metric()) == pytest.approx(1.0, abs=1e-12)
    assert mass(cosine_metric()) == pytest.approx(2.0 / math.pi, abs=1e-12)
    assert mass(exponential_metric(1.0)) == pytest.approx(math.sinh(1.0), abs=1e-12)


def test_mass_divergent():
    with pytest.raises(NonIntegrable):
        mass(hyperbolic_metric())
    with pytest.raises(NonIntegrable):
        mass(secant_metric())


def test_transform_H_identity_for_euclidean():
    m = constant_metric()
    assert transform_H(m, 0.25) == pytest.approx(0.25, abs=1e-12)


def test_transform_H_closed_forms():
    assert transform_H(cosine_metric(), 0.5) == pytest.approx(math.sqrt(2) / math.pi, abs=1e-12)
    assert transform_H(exponential_metric(1.0), 0.0) == pytest.approx(1 - math.cosh(1.0), abs=1e-12)


def test_transform_H_endpoints_approach_mass():
    m = cosine_metric()
    r = mass(m)
    assert transform_H(m, 1.0 - 1e-12) == pytest.approx(r, abs=1e-9)
    assert transform_H(m, -1.0 + 1e-12) == pytest.approx(-r, abs=1e-9)


@settings(max_examples=20, deadline=None)
@given(st.floats(-0.98, 0.98), st.floats(-0.98, 0.98))
def test_transform_H_strictly_increasing(u1, u2):
    if abs(u1 - u2) < 1e-6:   # below quadrature resolution
        return
    m = exponential_metric(-1.2)
    lo, hi = sorted((u1, u2))
    assert transform_H(m, lo) < transform_H(m, hi)


def test_inverse_H_round_trip():
    m = cosine_metric()
    rng = np.random.default_rng(42)
    for u in rng.uniform(-0.99, 0.99, 100):
        t = transform_H(m, u)
        assert inverse_H(m, t) == pytest.approx(u, abs=1e-10)


def test_inverse_H_examples():
    assert inverse_H(constant_metric(), 0.3) == pytest.approx(0.3, abs=1e-12)
    assert inverse_H(cosine_metric(), math.sqrt(2) / math.pi) == pytest.approx(0.5, abs=1e-10)


def test_inverse_H_out_of_range():
    m = cosine_metric()
    r = mass(m)
    with pytest.raises(OutOfRange):
        inverse_H(m, r * 1.0001)


def test_inverse_contract_tolerance():
    m = exponential_metric(2.0)
    r = mass(m)
    for t in np.linspace(-0.95 * r, 0.95 * r, 17):
        u = inverse_H(m, t)
        assert abs(transform_H(m, u) - t) <= 1e-12 * r


# ---------------------------------------------------------------------------
# fast transform table
# ---------------------------------------------------------------------------

def test_table_matches_op():
    for m in (cosine_metric(), exponential_metric(-2.0), constant_metric()):
        tab = transform_table(m)
        us = np.linspace(-0.999, 0.999, 257)
        exact = np.array([transform_H(m, float(u)) for u in us])
        assert np.max(np.abs(tab.h(us) - exact)) < 5e-12


def test_table_inverse_residual():
    m = cosine_metric()
    tab = transform_table(m)
    ts = np.linspace(-0.99, 0.99, 301) * tab.r
    us = tab.h_inv(ts)
    assert np.max(np.abs(tab.h(us) - ts)) <= 1e-12 * tab.r


def test_range_table_for_infinite_mass():
    m = hyperbolic_metric()
    tab = HTransform(m, lo=-0.9, hi=0.9, normalized=False)
    # H restricted to (-0.9, 0.9) is atanh up to the centering at 0
    us = np.linspace(-0.85, 0.85, 101)
    assert np.max(np.abs(tab.h(us) - np.arctanh(us))) < 1e-10
    ts = np.arctanh(np.linspace(-0.8, 0.8, 51))
    assert np.max(np.abs(tab.h_inv(ts) - np.tanh(ts))) < 1e-10


# ---------------------------------------------------------------------------
# log-concavity reports
# ---------------------------------------------------------------------------

def test_log_concavity_cosine():
    rep = log_concavity_report(cosine_metric(), np.linspace(-0.999, 0.999, 999))
    assert rep.is_nonnegative
    assert rep.exp_majorant_ok


def test_log_concavity_hyperbolic():
    rep = log_concavity_report(hyperbolic_metric(), np.linspace(-0.999, 0.999, 999))
    assert not rep.is_nonnegative
    assert rep.min_curvature <= -2.0
    assert not rep.exp_majorant_ok


def test_log_concavity_constant_equality():
    rep = log_concavity_report(constant_metric(), np.linspace(-0.9, 0.9, 99))
    assert rep.min_curvature == pytest.approx(0.0, abs=1e-12)
    assert rep.exp_majorant_ok
    assert rep.majorant_min_slack == pytest.approx(0.0, abs=1e-12)


# ---------------------------------------------------------------------------
# mollification
# ---------------------------------------------------------------------------

class _IdentityMap:
    knots = (0.0, 1.0)

    def __call__(self, x):
        return np.asarray(x, float)

    def deriv(self, x):
        return np.ones_like(np.asarray(x, float))

    def second_deriv(self, x):
        return np.zeros_like(np.asarray(x, float))


def test_mollify_identity_gives_unit_density():
    m = mollify(_IdentityMap(), 0.1)
    grid = np.linspace(-0.99, 0.99, 101)
    assert np.max(np.abs(np.asarray(m.density(grid)) - 1.0)) < 1e-12


def test_mollify_even_and_positive():
    m = mollify(psi_family(4.0, 1.0 / 3.0), 0.05)
    grid = np.linspace(-0.98, 0.98, 301)
    d = np.asarray(m.density(grid), float)
    assert np.min(d) > 0
    assert np.max(np.abs(d - d[::-1])) < 1e-12


def test_mollify_normalization_is_exact():
    # reflection extension pins the smoothed map at +-1, so half-masses match
    m = mollify(psi_family(81.0, 0.1), 0.05)
    assert mass(m) == pytest.approx(1.0, abs=1e-9)
    tab = transform_table(m)
    assert abs(tab.h(np.array([0.0]))[0]) < 1e-12


def test_mollify_spline_matches_direct_convolution():
    psi = psi_family(1.0, 0.5)
    m = mollify(psi, 0.05)
    exact = mollified_density_exact(psi, 0.05)
    pts = np.random.default_rng(3).uniform(-0.99, 0.99, 200)
    assert np.max(np.abs(np.asarray(m.density(pts)) - exact(pts))) < 1e-10


def test_mollify_converges_to_tent_derivative():
    psi = psi_family(81.0, 0.1)
    grid = np.linspace(-0.9999, 0.9999, 4001)
    sups = []
    for eps in (0.1, 0.05, 0.025):
        m = mollify(psi, eps)
        sups.append(np.max(np.abs(np.asarray(m.density(grid)) - psi.deriv(grid))))
    assert sups[0] / sups[1] >= 1.5
    assert sups[1] / sups[2] >= 1.5


def test_mollify_smoothness_no_grid_scale_oscillation():
    # second differences at sub-kernel spacing stay tame (no oscillation)
    m = mollify(psi_family(1.0, 0.5), 0.05)
    x = np.linspace(-0.8, 0.8, 2001)
    d = np.asarray(m.density(x), float)
    second = np.diff(d, 2)
    assert np.max(np.abs(second)) < 1e-3  # h^2 * max|R''| with h = 8e-4


def test_mollify_rejects_bad_input():
    with pytest.raises(InvalidInput):
        mollify(lambda x: 0.5 * np.asarray(x, float), 0.1)  # psi(1) != 1
    with pytest.raises(InvalidInput):
        # not odd
        mollify(lambda x: 0.5 * (np.asarray(x, float) + 1.0) ** 2 - 1.0, 0.1)
    with pytest.raises(InvalidInput):
        mollify(_IdentityMap(), 1.5)  # epsilon outside (0, 1)


def test_tent_metric_parameter_validation():
    with pytest.raises(ParameterOutOfRange):
        tent_metric(5.0, 0.5)  # a s^2 = 1.25 >= 1
    with pytest.raises(ParameterOutOfRange):
        tent_metric(1.0, 1.2)


# ---------------------------------------------------------------------------
# families from JSON
# ---------------------------------------------------------------------------

def test_metric_from_json_kinds():
    assert metric_from_json({"kind": "constant"}).name == "constant(1)"
    assert metric_from_json({"kind": "exponential", "params": {"c": 2.0}}).name == "exponential(2)"
    m = metric_from_json({"kind": "tabulated", "u": [-1, -0.5, 0, 0.5, 1],
                          "R": [1.0, 1.2, 1.3, 1.2, 1.0]})
    assert float(m.density(0.0)) == pytest.approx(1.3)
    mm = metric_from_json({"kind": "lemma_psi_family",
                           "params": {"a": 1.0, "s": 0.5, "epsilon": 0.1}})
    assert mm.name.startswith("mollified")


def test_metric_from_json_rejects_unknown():
    with pytest.raises(InvalidInput):
        metric_from_json({"kind": "nope"})
    with pytest.raises(InvalidInput):
        metric_from_json({"params": {}})


def test_tabulated_monotone_positive():
    u = np.linspace(-1, 1, 21)
    R = 1.0 + 0.5 * np.cos(u)
    m = tabulated_metric(u, R)
    grid = np.linspace(-0.95, 0.95, 50)
    assert np.all(np.asarray(m.density(grid)) > 0)
    with pytest.raises(InvalidInput):
        tabulated_metric([0, 1], [1, 1])


def test_derivative_unavailable_at_the_edge():
    from schwarzlab.errors import DerivativeUnavailable
    m = cosine_metric().without_second_derivative()
    u = -1.0 + 1e-16
    if u > -1.0:   # representable strictly inside
        with pytest.raises(DerivativeUnavailable):
            curvature_at(m, u)


def test_nonneg_curvature_families_have_finite_mass():
    families = [constant_metric(), cosine_metric(), exponential_metric(2.0),
                exponential_metric(-1.0), mollify(psi_family(1.0, 0.5), 0.05)]
    for m in families:
        assert math.isfinite(mass(m))
