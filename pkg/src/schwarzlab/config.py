"""Default numerical tolerances, collected in one place.

Every tolerance that a bound check or solver consults lives here so that the
CLI can override them uniformly and reports can record the effective values.
"""

from __future__ import annotations

from dataclasses import dataclass, field, asdict


@dataclass(frozen=True)
class Tolerances:
    # quadrature
    quad_abs_tol: float = 1e-12
    quad_ceiling: float = 1e12
    # numeric differentiation base step
    diff_step: float = 1e-6
    # monotone transform inversion: |H(result) - t| <= inverse_rel_tol * r
    inverse_rel_tol: float = 1e-12
    # slack below which a bound check still counts as passed
    slack_tol: float = 1e-9
    # slack window treated as an equality case
    equality_band: float = 1e-9
    # finite-difference relaxation solver
    fd_update_tol: float = 1e-10
    fd_fail_tol: float = 1e-8
    fd_max_sweeps: int = 60000
    fd_nonlinear_relax: float = 0.8
    # boundary sampling
    boundary_samples: int = 1024
    # default check grid
    grid_radii: int = 24
    grid_angles: int = 96
    grid_radius: float = 0.95

    def replaced(self, **overrides: float) -> "Tolerances":
        data = asdict(self)
        for key, value in overrides.items():
            if key not in data:
                raise KeyError(f"unknown tolerance {key!r}")
            data[key] = type(data[key])(value)
        return Tolerances(**data)


DEFAULT = Tolerances()
