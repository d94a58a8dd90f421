"""Gradient and distance bound checks with per-point reports.

Every check solves (or accepts) a field on the disk, evaluates the left and
right side of one inequality on a grid, and assembles a BoundReport.  A
negative minimum slack beyond the shared tolerance marks the report failed;
near-zero slack is counted separately as an equality case, since the sharp
examples sit exactly on the bound.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field as dfield
from typing import Dict, Optional, Sequence

import numpy as np

from .config import DEFAULT, Tolerances
from .errors import NonIntegrable, OutsideDisk
from .harmonic import BoundaryData, HarmonicField, solved_field
from .lemmas import check_unimodal
from .metrics import (Metric1D, log_concavity_report, mass, transform_table)

FOUR_OVER_PI = 4.0 / math.pi


def ring_grid(radii: int = DEFAULT.grid_radii, angles: int = DEFAULT.grid_angles,
              radius: float = DEFAULT.grid_radius) -> np.ndarray:
    """Concentric evaluation rings: `radii` circles up to `radius`, `angles` spokes."""
    r = radius * (1.0 + np.arange(radii)) / radii
    t = 2.0 * math.pi * np.arange(angles) / angles
    return (r[:, None] * np.exp(1j * t)[None, :]).ravel()


def radial_grid(radii: int = 25, spokes: int = 8, radius: float = 0.95) -> np.ndarray:
    r = radius * (1.0 + np.arange(radii)) / radii
    t = 2.0 * math.pi * np.arange(spokes) / spokes
    return (r[:, None] * np.exp(1j * t)[None, :]).ravel()


@dataclass
class BoundReport:
    """Per-point record of one inequality check."""
    bound_name: str
    z: np.ndarray
    lhs: np.ndarray
    rhs: np.ndarray
    tolerance: float = DEFAULT.slack_tol
    applicable: bool = True
    warnings: tuple = ()
    extras: Dict[str, float] = dfield(default_factory=dict)

    def __post_init__(self):
        self.z = np.ravel(np.asarray(self.z, complex))
        self.lhs = np.ravel(np.asarray(self.lhs, float))
        self.rhs = np.ravel(np.asarray(self.rhs, float))
        if len(self.z) == 0:
            raise ValueError("a bound report needs at least one point")

    @property
    def slack(self) -> np.ndarray:
        return self.rhs - self.lhs

    @property
    def min_slack(self) -> float:
        return float(np.min(self.slack))

    @property
    def worst_point(self) -> complex:
        return complex(self.z[int(np.argmin(self.slack))])

    @property
    def passed(self) -> bool:
        return self.min_slack >= -self.tolerance

    @property
    def equality_count(self) -> int:
        return int(np.sum(np.abs(self.slack) <= DEFAULT.equality_band))

    def to_json_dict(self) -> dict:
        return {
            "bound_name": self.bound_name,
            "passed": bool(self.passed),
            "applicable": bool(self.applicable),
            "min_slack": self.min_slack,
            "worst_point": [self.worst_point.real, self.worst_point.imag],
            "tolerance": self.tolerance,
            "points": len(self.z),
            "equality_cases": self.equality_count,
            "warnings": list(self.warnings),
            "extras": {k: (float(v) if isinstance(v, (int, float, np.floating)) else v)
                       for k, v in self.extras.items()},
        }

    def to_json(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["z_re", "z_im", "lhs", "rhs", "slack"])
            for zz, l, r, s in zip(self.z, self.lhs, self.rhs, self.slack):
                writer.writerow([f"{zz.real:.17g}", f"{zz.imag:.17g}",
                                 f"{l:.17g}", f"{r:.17g}", f"{s:.17g}"])


# ---------------------------------------------------------------------------
# pointwise quantities
# ---------------------------------------------------------------------------

def schwarz_quotient(metric: Optional[Metric1D], field: HarmonicField, z) -> float:
    """|grad f(z)| (1 - |z|^2) / (1 - f(z)^2)."""
    z = complex(z)
    if abs(z) >= 1.0:
        raise OutsideDisk("Schwarz quotient needs |z| < 1")
    f = field.evaluate(z)
    g = field.gradient(z)
    return float(np.hypot(g[0], g[1]) * (1.0 - abs(z) ** 2) / (1.0 - f * f))


def chen_rhs(g_value: float, z) -> float:
    """Euclidean-harmonic gradient bound (4/pi) cos(pi g / 2) / (1 - |z|^2)."""
    z = complex(z)
    if abs(z) >= 1.0:
        raise OutsideDisk("bound evaluated outside the disk")
    if not -1.0 <= g_value <= 1.0:
        raise ValueError("g_value must lie in [-1, 1]")
    return FOUR_OVER_PI * math.cos(0.5 * math.pi * g_value) / (1.0 - abs(z) ** 2)


def hyperbolic_distance(z, w) -> float:
    """artanh(|z - w| / |1 - z conj(w)|) for points of the open disk."""
    z, w = complex(z), complex(w)
    if abs(z) >= 1.0 or abs(w) >= 1.0:
        raise OutsideDisk("hyperbolic distance needs both points inside the disk")
    return float(np.arctanh(abs(z - w) / abs(1.0 - z * np.conj(w))))


def _hyperbolic_distance_many(z: np.ndarray, w: np.ndarray) -> np.ndarray:
    return np.arctanh(np.abs(z - w) / np.abs(1.0 - z * np.conj(w)))


def cos_quadratic_majorant_check(samples: Sequence[float]) -> float:
    """min over samples b in [0, 1] of (1 - b^2) - cos(pi b / 2); must be >= 0."""
    b = np.asarray(samples, float)
    if np.any((b < 0.0) | (b > 1.0)):
        raise ValueError("samples must lie in [0, 1]")
    return float(np.min((1.0 - b * b) - np.cos(0.5 * math.pi * b)))


# ---------------------------------------------------------------------------
# bound suites
# ---------------------------------------------------------------------------

def _curvature_scan_grid() -> np.ndarray:
    return np.linspace(-0.999, 0.999, 601)


def check_gradient_bound(metric: Metric1D, boundary: BoundaryData,
                         grid: Optional[Sequence[complex]] = None,
                         tols: Tolerances = DEFAULT) -> BoundReport:
    """Check |grad f| <= (4/pi)(1 - f^2)/(1 - |z|^2) for the lifted solution.

    Also records the three-link certificate chain behind the bound at every
    grid point (with v = f(z), V = H(v)/r, V' = R(v)/r, all scaled by
    (1 - |z|^2)):

        |grad f| (1-|z|^2)  <=  (4/pi) cos(pi V / 2) / V'      (harmonic link)
                            <=  (4/pi) (1 - V^2) / V'          (cosine majorant)
                            <=  (4/pi) (1 - v^2)               (diffeo link)

    The first link is an instance of the Euclidean gradient bound; the last
    needs the density to be log-concave, so the chain is only gated when the
    curvature scan certifies non-negative curvature.  Non-log-concave
    metrics get a warning and the chain values are recorded either way.
    """
    if grid is None:
        grid = ring_grid(tols.grid_radii, tols.grid_angles, tols.grid_radius)
    z = np.ravel(np.asarray(grid, complex))
    field = solved_field(metric, boundary)

    f = field.value_many(z)
    gx, gy = field.gradient_many(z)
    grad = np.hypot(gx, gy)
    one_minus = 1.0 - np.abs(z) ** 2

    lhs = grad
    rhs = FOUR_OVER_PI * (1.0 - f * f) / one_minus

    warnings = []
    curv = log_concavity_report(metric, _curvature_scan_grid(), tols=tols)
    chain_checked = curv.is_nonnegative
    if not curv.is_nonnegative:
        warnings.append(
            f"metric is not certified non-negative curvature "
            f"(min curvature {curv.min_curvature:.3g} at u={curv.worst_u:.3g}); "
            f"bound and chain are reported but the underlying result does not apply")

    extras = {"chain_checked": chain_checked, "min_curvature": curv.min_curvature}
    try:
        table = transform_table(metric)
    except NonIntegrable:
        table = None
        extras["chain_checked"] = False
        extras["mass"] = math.inf
        warnings.append("density has infinite mass; certificate chain unavailable")
    if table is not None:
        r = table.r
        psi_v = table.h(f) / r
        psi_prime = np.asarray(metric.density(f), float) / r
        lhs_scaled = grad * one_minus
        chen_scaled = FOUR_OVER_PI * np.cos(0.5 * math.pi * psi_v) / psi_prime
        mid = FOUR_OVER_PI * (1.0 - psi_v ** 2) / psi_prime
        fin = FOUR_OVER_PI * (1.0 - f * f)
        extras.update({
            "chain_harmonic_min_slack": float(np.min(chen_scaled - lhs_scaled)),
            "chain_cosine_min_slack": float(np.min(mid - chen_scaled)),
            "chain_diffeo_min_slack": float(np.min(fin - mid)),
            "mass": float(r),
        })
    return BoundReport("gradient_bound_4_over_pi", z, lhs, rhs,
                       tolerance=tols.slack_tol, warnings=tuple(warnings),
                       extras=extras)


def check_unimodal_bounds(metric: Metric1D, boundary: BoundaryData,
                          grid: Optional[Sequence[complex]] = None,
                          tols: Tolerances = DEFAULT) -> tuple[BoundReport, BoundReport]:
    """The two bounds for unimodal densities.

    Report 1: |grad f| <= 2 (1 - |f|) / (1 - |z|^2) on the ring grid.
    Report 2: |f(z)| <= (4/pi) arctan |z| on radial grids; it additionally
    requires f(0) = 0 and balanced half-masses, otherwise it is marked
    not applicable (not failed).
    """
    if grid is None:
        grid = ring_grid(tols.grid_radii, tols.grid_angles, tols.grid_radius)
    z = np.ravel(np.asarray(grid, complex))
    unimodal = check_unimodal(metric)
    # a unimodal density is bounded by its peak, hence integrable; the table
    # can only fail for metrics that already miss the precondition
    try:
        table = transform_table(metric)
    except NonIntegrable:
        table = None
    field = solved_field(metric, boundary)

    f = field.value_many(z)
    gx, gy = field.gradient_many(z)
    lhs1 = np.hypot(gx, gy)
    rhs1 = 2.0 * (1.0 - np.abs(f)) / (1.0 - np.abs(z) ** 2)
    warn1 = () if unimodal else ("density failed the sampled unimodality check",)
    report1 = BoundReport("gradient_bound_unimodal", z, lhs1, rhs1,
                          tolerance=tols.slack_tol, applicable=unimodal,
                          warnings=warn1,
                          extras={"mass": float(table.r) if table else math.inf})

    rad = radial_grid()
    f0 = field.evaluate(0.0)
    if table is not None:
        balance = abs(table.h(np.array([0.0]))[0])  # H(0) = (B - A)/2
        balanced = balance <= 1e-9 * table.r
    else:
        balance = math.inf
        balanced = False
    origin_fixed = abs(f0) <= 1e-7
    applicable2 = unimodal and balanced and origin_fixed
    warn2 = []
    if not unimodal:
        warn2.append("density failed the sampled unimodality check")
    if not balanced:
        warn2.append(f"half-masses differ by {2 * balance:.3g}")
    if not origin_fixed:
        warn2.append(f"f(0) = {f0:.3g} is not 0")
    fr = field.value_many(rad)
    report2 = BoundReport("arctan_radial_bound", rad, np.abs(fr),
                          FOUR_OVER_PI * np.arctan(np.abs(rad)),
                          tolerance=tols.slack_tol, applicable=applicable2,
                          warnings=tuple(warn2),
                          extras={"f_origin": float(f0),
                                  "half_mass_imbalance": float(2 * balance)})
    return report1, report2


def check_distance_contraction(metric: Metric1D, boundary: BoundaryData,
                               pairs: Sequence[tuple[complex, complex]],
                               tols: Tolerances = DEFAULT) -> BoundReport:
    """d_h(f(z), f(w)) <= (4/pi) d_h(z, w) over the supplied point pairs."""
    pairs = np.asarray(pairs, complex)
    if pairs.ndim != 2 or pairs.shape[1] != 2:
        raise ValueError("pairs must have shape (m, 2)")
    z, w = pairs[:, 0], pairs[:, 1]
    field = solved_field(metric, boundary)
    fz = field.value_many(z)
    fw = field.value_many(w)
    lhs = np.arctanh(np.abs(fz - fw) / np.abs(1.0 - fz * fw))
    rhs = FOUR_OVER_PI * _hyperbolic_distance_many(z, w)
    curv = log_concavity_report(metric, _curvature_scan_grid(), tols=tols)
    warnings = () if curv.is_nonnegative else (
        "metric is not certified non-negative curvature",)
    return BoundReport("distance_contraction_4_over_pi", z, lhs, rhs,
                       tolerance=tols.slack_tol, warnings=warnings,
                       extras={"min_curvature": curv.min_curvature})


def random_disk_pairs(seed: int, count: int, radius: float = 0.95) -> np.ndarray:
    rng = np.random.default_rng(seed)
    z = radius * np.sqrt(rng.uniform(0, 1, count)) * np.exp(2j * math.pi * rng.uniform(0, 1, count))
    w = radius * np.sqrt(rng.uniform(0, 1, count)) * np.exp(2j * math.pi * rng.uniform(0, 1, count))
    return np.stack([z, w], axis=1)


def mobius_automorphism(a: complex, phi: float = 0.0):
    """Disk automorphism z -> e^{i phi} (z - a) / (1 - conj(a) z)."""
    a = complex(a)
    if abs(a) >= 1.0:
        raise OutsideDisk("automorphism parameter must lie inside the disk")

    def transform(z):
        z = np.asarray(z, complex)
        return np.exp(1j * phi) * (z - a) / (1.0 - np.conj(a) * z)

    return transform
