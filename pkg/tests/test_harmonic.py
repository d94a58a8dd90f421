import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schwarzlab.errors import (InvalidInput, OutsideDisk, StencilOutsideDisk)
from schwarzlab.harmonic import (BoundaryData, analytic_field,
                                 boundary_from_function, boundary_from_json,
                                 boundary_from_samples, constant_boundary,
                                 cosine_boundary, euclidean_field,
                                 fd_solve_oracle, gradient_of, harmonic_extend,
                                 hopf_holomorphy_residual, oracle_sup_difference,
                                 pde_residual, poisson_values,
                                 random_smooth_boundary,
                                 random_symmetric_boundary, solve_R_harmonic,
                                 solved_field, step_boundary)
from schwarzlab.metrics import (constant_metric, cosine_metric,
                                exponential_metric, hyperbolic_metric)


# ---------------------------------------------------------------------------
# Poisson extension
# ---------------------------------------------------------------------------

def test_constant_boundary_extends_to_constant():
    b = constant_boundary(0.4)
    for z in (0.0, 0.3 + 0.2j, -0.7j):
        assert harmonic_extend(b, z) == pytest.approx(0.4, abs=1e-12)


def test_cosine_boundary_gives_real_part():
    b = cosine_boundary(1.0, 1, 0.0)
    assert harmonic_extend(b, 0.3 + 0.2j) == pytest.approx(0.3, abs=1e-10)
    assert harmonic_extend(b, -0.55 - 0.1j) == pytest.approx(-0.55, abs=1e-10)


def test_step_boundary_odd_symmetry_at_origin():
    assert harmonic_extend(step_boundary(), 0.0) == pytest.approx(0.0, abs=1e-12)


def test_step_closed_form():
    b = step_boundary()
    for z in (0.3 + 0.2j, -0.5 + 0.1j, 0.1 - 0.7j):
        expected = 2 / math.pi * np.angle((1 + z) / (1 - z))
        assert harmonic_extend(b, z) == pytest.approx(expected, abs=1e-5)


def test_outside_disk_raises():
    b = constant_boundary(0.0)
    with pytest.raises(OutsideDisk):
        harmonic_extend(b, 1.0)
    with pytest.raises(OutsideDisk):
        gradient_of(b, 1.2j)


def test_gradient_of_cosine_boundary():
    g = gradient_of(cosine_boundary(1.0, 1, 0.0), 0.1 + 0.5j)
    assert g[0] == pytest.approx(1.0, abs=1e-10)
    assert g[1] == pytest.approx(0.0, abs=1e-10)


def test_gradient_step_at_origin():
    g = gradient_of(step_boundary(), 0.0)
    assert np.hypot(*g) == pytest.approx(4 / math.pi, abs=1e-4)


def test_gradient_linearity():
    b1 = cosine_boundary(0.5, 2, 0.3)
    b2 = random_smooth_boundary(11)
    combo = boundary_from_function(lambda th: 0.7 * b1.values(th) - 0.2 * b2.values(th))
    z = 0.23 - 0.41j
    g = gradient_of(combo, z)
    expected = 0.7 * gradient_of(b1, z) - 0.2 * gradient_of(b2, z)
    assert np.max(np.abs(g - expected)) < 1e-10


def test_gradient_matches_finite_differences():
    b = random_smooth_boundary(5)
    rng = np.random.default_rng(0)
    h = 1e-6
    for _ in range(100):
        z = 0.9 * math.sqrt(rng.uniform()) * np.exp(2j * math.pi * rng.uniform())
        g = gradient_of(b, z)
        fx = (harmonic_extend(b, z + h) - harmonic_extend(b, z - h)) / (2 * h)
        fy = (harmonic_extend(b, z + 1j * h) - harmonic_extend(b, z - 1j * h)) / (2 * h)
        assert g[0] == pytest.approx(fx, abs=1e-6)
        assert g[1] == pytest.approx(fy, abs=1e-6)


def test_maximum_principle_and_mean_value():
    b = random_smooth_boundary(9)
    rng = np.random.default_rng(1)
    z = 0.95 * np.sqrt(rng.uniform(0, 1, 200)) * np.exp(2j * math.pi * rng.uniform(0, 1, 200))
    vals = poisson_values(b, z)
    assert vals.min() >= b.samples.min() - 1e-12
    assert vals.max() <= b.samples.max() + 1e-12
    assert harmonic_extend(b, 0.0) == pytest.approx(b.mean(), abs=1e-10)


def test_conjugation_symmetry():
    # even boundary data in theta gives g(conj z) = g(z)
    b = boundary_from_function(lambda th: 0.6 * np.cos(th) + 0.2 * np.cos(3 * th))
    rng = np.random.default_rng(2)
    for _ in range(20):
        z = 0.9 * math.sqrt(rng.uniform()) * np.exp(2j * math.pi * rng.uniform())
        assert harmonic_extend(b, np.conj(z)) == pytest.approx(
            harmonic_extend(b, z), abs=1e-12)


# ---------------------------------------------------------------------------
# boundary data plumbing
# ---------------------------------------------------------------------------

def test_boundary_values_must_stay_in_target():
    with pytest.raises(InvalidInput):
        boundary_from_function(lambda th: 1.5 * np.cos(th))


def test_boundary_from_samples_interpolates():
    theta = np.linspace(0, 2 * math.pi, 64, endpoint=False)
    vals = 0.5 * np.sin(theta)
    b = boundary_from_samples(theta, vals)
    probe = np.array([0.1, 1.3, 4.0])
    assert np.max(np.abs(b.values(probe) - 0.5 * np.sin(probe))) < 2e-3


def test_boundary_from_json():
    b = boundary_from_json({"kind": "expression-preset", "name": "step",
                            "params": {"amplitude": 0.5}})
    assert b.samples.max() == pytest.approx(0.5)
    b2 = boundary_from_json({"kind": "samples",
                             "theta": [0.0, 2.0, 4.0],
                             "values": [0.1, 0.2, -0.1]})
    assert b2.samples.shape == (1024,)
    with pytest.raises(InvalidInput):
        boundary_from_json({"kind": "expression-preset", "name": "nope"})


def test_random_symmetric_boundary_antipodal():
    b = random_symmetric_boundary(3)
    th = np.linspace(0, math.pi, 100)
    assert np.max(np.abs(b.values(th) + b.values(th + math.pi))) < 1e-12


# ---------------------------------------------------------------------------
# transform solve path
# ---------------------------------------------------------------------------

def test_solve_reduces_to_harmonic_for_unit_density():
    m = constant_metric()
    b = random_smooth_boundary(21)
    z = 0.4 - 0.33j
    assert solve_R_harmonic(m, b, z) == pytest.approx(harmonic_extend(b, z), abs=1e-11)


def test_solve_constant_boundary_any_metric():
    for m in (cosine_metric(), exponential_metric(-2.0)):
        b = constant_boundary(0.5)
        assert solve_R_harmonic(m, b, 0.2 + 0.1j) == pytest.approx(0.5, abs=1e-10)


def test_solve_cosine_metric_closed_form():
    m = cosine_metric()
    b = random_smooth_boundary(3)
    gb = boundary_from_function(lambda th: np.sin(math.pi * b.values(th) / 2))
    rng = np.random.default_rng(4)
    for _ in range(20):
        z = 0.92 * math.sqrt(rng.uniform()) * np.exp(2j * math.pi * rng.uniform())
        closed = 2 / math.pi * math.asin(harmonic_extend(gb, z))
        assert solve_R_harmonic(m, b, z) == pytest.approx(closed, abs=1e-12)


def test_solve_hyperbolic_metric_closed_form():
    # infinite mass: the lift still exists for compactly-supported data
    m = hyperbolic_metric()
    b = boundary_from_function(lambda th: np.tanh(3 * np.cos(th)))
    for z in (0.1 + 0.2j, -0.6 + 0.1j, 0.4j):
        assert solve_R_harmonic(m, b, z) == pytest.approx(
            math.tanh(3 * z.real), abs=1e-10)


# ---------------------------------------------------------------------------
# residual diagnostics
# ---------------------------------------------------------------------------

def test_pde_residual_tanh_hyperbolic():
    m = hyperbolic_metric()
    fld = analytic_field(
        lambda x, y: np.tanh(3 * np.asarray(x, float)),
        lambda x, y: (3 / np.cosh(3 * np.asarray(x, float)) ** 2,
                      np.zeros_like(np.asarray(y, float))))
    assert abs(pde_residual(m, fld, 0.1 + 0.2j, 1e-3)) <= 1e-4


def test_pde_residual_constant_field():
    fld = analytic_field(lambda x, y: np.full_like(np.asarray(x, float), 0.3),
                         lambda x, y: (np.zeros_like(np.asarray(x, float)),) * 2)
    assert pde_residual(cosine_metric(), fld, 0.1 + 0.2j, 1e-3) == 0.0


def test_pde_residual_solved_field():
    m = cosine_metric()
    fld = solved_field(m, random_smooth_boundary(8))
    rng = np.random.default_rng(5)
    for _ in range(12):
        z = 0.9 * math.sqrt(rng.uniform()) * np.exp(2j * math.pi * rng.uniform())
        assert abs(pde_residual(m, fld, z, 1e-3)) <= 1e-3


def test_pde_residual_stencil_guard():
    fld = solved_field(constant_metric(), random_smooth_boundary(1))
    with pytest.raises(StencilOutsideDisk):
        pde_residual(constant_metric(), fld, 0.9995 + 0.0j, 1e-3)


def test_hopf_constant_field_zero():
    fld = analytic_field(lambda x, y: np.full_like(np.asarray(x, float), 0.2),
                         lambda x, y: (np.zeros_like(np.asarray(x, float)),) * 2)
    grid = 0.3 * np.exp(1j * np.linspace(0, 2 * math.pi, 8, endpoint=False))
    assert hopf_holomorphy_residual(cosine_metric(), fld, grid, 1e-3) == 0.0


def test_hopf_tanh_field():
    # R(f)^2 f_z^2 = n^2/4 identically for f = tanh(n x) under 1/(1-u^2)
    m = hyperbolic_metric()
    n = 2
    fld = analytic_field(
        lambda x, y: np.tanh(n * np.asarray(x, float)),
        lambda x, y: (n / np.cosh(n * np.asarray(x, float)) ** 2,
                      np.zeros_like(np.asarray(y, float))))
    grid = 0.4 * np.exp(1j * np.linspace(0, 2 * math.pi, 16, endpoint=False))
    assert hopf_holomorphy_residual(m, fld, grid, 1e-3) <= 1e-6


def test_hopf_solved_field():
    m = cosine_metric()
    fld = solved_field(m, random_smooth_boundary(8))
    grid = 0.8 * np.exp(1j * np.linspace(0, 2 * math.pi, 24, endpoint=False))
    assert hopf_holomorphy_residual(m, fld, grid, 1e-3) <= 1e-3


# ---------------------------------------------------------------------------
# finite-difference oracle
# ---------------------------------------------------------------------------

def test_oracle_rejects_small_grid():
    with pytest.raises(InvalidInput):
        fd_solve_oracle(constant_metric(), step_boundary(), 17)


def test_oracle_constant_boundary_is_exact():
    grid = fd_solve_oracle(cosine_metric(), constant_boundary(0.3), 65)
    _, vals = grid.interior_points()
    assert np.max(np.abs(vals - 0.3)) < 1e-12
    assert grid.sweeps == 1


def test_oracle_harmonic_case():
    grid = fd_solve_oracle(constant_metric(), cosine_boundary(1.0, 1, 0.0), 129)
    pts, vals = grid.interior_points()
    assert np.max(np.abs(vals - pts.real)) < 1e-3


def test_oracle_matches_transform_solution():
    b = random_smooth_boundary(3)
    assert oracle_sup_difference(cosine_metric(), b, 101) < 5e-3


def test_oracle_csv_roundtrip(tmp_path):
    grid = fd_solve_oracle(constant_metric(), cosine_boundary(0.8), 41)
    path = tmp_path / "grid.csv"
    grid.to_csv(path)
    rows = np.loadtxt(path, delimiter=",", skiprows=1)
    assert rows.shape[1] == 3
    assert rows.shape[0] == int(np.sum(grid.inside))


def test_oracle_no_convergence_with_tiny_cap():
    import dataclasses
    from schwarzlab.config import DEFAULT
    from schwarzlab.errors import NoConvergence
    tols = DEFAULT.replaced(fd_max_sweeps=3)
    with pytest.raises(NoConvergence):
        fd_solve_oracle(cosine_metric(), cosine_boundary(0.8), 65, tols=tols)
