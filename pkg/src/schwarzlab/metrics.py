"""Metric densities R(u) on an open interval and their transforms.

A metric here is a positive density on an open interval, carrying its first
(and optionally second) derivative.  The module computes Gaussian curvature
of the associated strip metric, the mass r = (1/2) * integral of R over
(-1, 1), the centered primitive H and its inverse, log-concavity
diagnostics, and mollification of piecewise densities.
"""

from __future__ import annotations

import dataclasses
import functools
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .config import DEFAULT, Tolerances
from .errors import (DerivativeUnavailable, DomainError, InvalidInput,
                     NonIntegrable, OutOfRange, ParameterOutOfRange)
from .quadrature import (adaptive_simpson, gauss_legendre,
                         integrate_to_endpoint, segments_gauss)


@dataclass(frozen=True, eq=False)
class Metric1D:
    """Positive density on the open interval (domain_lo, domain_hi).

    density/d_density/d2_density accept floats or numpy arrays.  Instances
    are immutable; expensive derived quantities (mass parts, transform
    tables) are memoized per instance in module-level caches.
    """
    domain_lo: float
    domain_hi: float
    density: Callable
    d_density: Callable
    d2_density: Optional[Callable] = None
    name: str = "metric"
    claims_nonneg_curvature: bool = False

    def require_inside(self, u: float) -> None:
        if not (self.domain_lo < u < self.domain_hi):
            raise DomainError(
                f"{u!r} outside the open interval ({self.domain_lo}, {self.domain_hi})")

    def without_second_derivative(self) -> "Metric1D":
        """Copy that forces the finite-difference curvature path."""
        return dataclasses.replace(self, d2_density=None)


def _require_unit_domain(metric: Metric1D) -> None:
    if metric.domain_lo != -1.0 or metric.domain_hi != 1.0:
        raise DomainError("operation requires the domain (-1, 1)")


# ---------------------------------------------------------------------------
# metric families
# ---------------------------------------------------------------------------

def constant_metric(value: float = 1.0) -> Metric1D:
    if value <= 0:
        raise ParameterOutOfRange("constant density must be positive")
    return Metric1D(-1.0, 1.0,
                    lambda u: np.full_like(np.asarray(u, float), value),
                    lambda u: np.zeros_like(np.asarray(u, float)),
                    lambda u: np.zeros_like(np.asarray(u, float)),
                    name=f"constant({value:g})",
                    claims_nonneg_curvature=True)


def exponential_metric(c: float) -> Metric1D:
    return Metric1D(-1.0, 1.0,
                    lambda u: np.exp(c * np.asarray(u, float)),
                    lambda u: c * np.exp(c * np.asarray(u, float)),
                    lambda u: c * c * np.exp(c * np.asarray(u, float)),
                    name=f"exponential({c:g})",
                    claims_nonneg_curvature=True)


def cosine_metric() -> Metric1D:
    h = 0.5 * math.pi
    return Metric1D(-1.0, 1.0,
                    lambda u: np.cos(h * np.asarray(u, float)),
                    lambda u: -h * np.sin(h * np.asarray(u, float)),
                    lambda u: -h * h * np.cos(h * np.asarray(u, float)),
                    name="cosine",
                    claims_nonneg_curvature=True)


def hyperbolic_metric() -> Metric1D:
    def rho(u):
        u = np.asarray(u, float)
        with np.errstate(divide="ignore"):
            return 1.0 / (1.0 - u * u)

    def drho(u):
        u = np.asarray(u, float)
        with np.errstate(divide="ignore"):
            return 2.0 * u / (1.0 - u * u) ** 2

    def d2rho(u):
        u = np.asarray(u, float)
        with np.errstate(divide="ignore"):
            return (2.0 + 6.0 * u * u) / (1.0 - u * u) ** 3

    return Metric1D(-1.0, 1.0, rho, drho, d2rho, name="hyperbolic")


def secant_metric() -> Metric1D:
    h = 0.5 * math.pi

    def rho(u):
        return 1.0 / np.cos(h * np.asarray(u, float))

    def drho(u):
        x = h * np.asarray(u, float)
        return h * np.sin(x) / np.cos(x) ** 2

    def d2rho(u):
        x = h * np.asarray(u, float)
        sec = 1.0 / np.cos(x)
        tan = np.tan(x)
        return h * h * sec * (tan * tan + sec * sec)

    return Metric1D(-1.0, 1.0, rho, drho, d2rho, name="secant")


def half_plane_metric() -> Metric1D:
    """R(x) = 1 - exp(-x) on (0, inf)."""
    return Metric1D(0.0, math.inf,
                    lambda u: -np.expm1(-np.asarray(u, float)),
                    lambda u: np.exp(-np.asarray(u, float)),
                    lambda u: -np.exp(-np.asarray(u, float)),
                    name="half_plane_one_minus_exp",
                    claims_nonneg_curvature=True)


def tent_metric(a: float, s: float) -> Metric1D:
    """Density psi'(a, s): an even piecewise-linear tent with flat wings.

    psi is the concave piecewise map with a quadratic cap on (0, s) and an
    affine tail on (s, 1), extended oddly.  Its derivative is continuous
    but has corners at |u| in {0, s}, so no second derivative is attached.
    """
    u0 = a * s * s
    if not (0.0 < s < 1.0) or not (0.0 < u0 < 1.0) or a <= 0:
        raise ParameterOutOfRange("tent family needs s in (0,1) and a*s^2 in (0,1)")
    peak = 1.0 + 2.0 * a * s - u0

    def rho(x):
        ax = np.abs(np.asarray(x, float))
        return np.where(ax < s, peak - 2.0 * a * ax, 1.0 - u0)

    def drho(x):
        x = np.asarray(x, float)
        return np.where(np.abs(x) < s, -2.0 * a * np.sign(x), 0.0)

    return Metric1D(-1.0, 1.0, rho, drho, None, name=f"tent(a={a:g}, s={s:g})")


def tabulated_metric(u: Sequence[float], R: Sequence[float]) -> Metric1D:
    """Monotone-cubic interpolant through sampled (u, R) pairs."""
    from scipy.interpolate import PchipInterpolator
    u = np.asarray(u, float)
    R = np.asarray(R, float)
    if u.ndim != 1 or u.shape != R.shape or len(u) < 3:
        raise InvalidInput("tabulated metric needs matching 1-d u/R arrays, >= 3 samples")
    if np.any(np.diff(u) <= 0):
        raise InvalidInput("tabulated abscissae must be strictly increasing")
    if np.any(R <= 0):
        raise InvalidInput("tabulated density must be positive")
    interp = PchipInterpolator(u, R)
    return Metric1D(float(u[0]), float(u[-1]), interp, interp.derivative(), None,
                    name="tabulated")


def metric_from_json(spec: dict) -> Metric1D:
    """Build a metric from {"kind": ..., "params": {...}} documents."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise InvalidInput("metric spec must be an object with a 'kind' field")
    kind = spec["kind"]
    params = spec.get("params", {}) or {}
    if kind == "constant":
        return constant_metric(float(params.get("value", 1.0)))
    if kind == "exponential":
        if "c" not in params:
            raise InvalidInput("exponential metric needs params.c")
        return exponential_metric(float(params["c"]))
    if kind == "cosine":
        return cosine_metric()
    if kind == "hyperbolic":
        return hyperbolic_metric()
    if kind == "secant":
        return secant_metric()
    if kind == "half_plane_one_minus_exp":
        return half_plane_metric()
    if kind == "lemma_psi_family":
        try:
            a, s = float(params["a"]), float(params["s"])
        except KeyError as exc:
            raise InvalidInput("lemma_psi_family needs params.a and params.s") from exc
        if "epsilon" in params:
            from .lemmas import psi_family
            return mollify(psi_family(a, s), float(params["epsilon"]))
        return tent_metric(a, s)
    if kind == "tabulated":
        u = spec.get("u", params.get("u"))
        R = spec.get("R", params.get("R"))
        if u is None or R is None:
            raise InvalidInput("tabulated metric needs 'u' and 'R' arrays")
        return tabulated_metric(u, R)
    raise InvalidInput(f"unknown metric kind {kind!r}")


# ---------------------------------------------------------------------------
# curvature
# ---------------------------------------------------------------------------

def curvature_at(metric: Metric1D, u: float, *, force_numeric: bool = False,
                 step: Optional[float] = None, tols: Tolerances = DEFAULT) -> float:
    """Gaussian curvature -(1/R^2) (R'/R)' of the strip metric at u."""
    u = float(u)
    metric.require_inside(u)
    R = float(metric.density(u))
    if R <= 0:
        raise DomainError(f"density must be positive, got {R} at {u}")
    if metric.d2_density is not None and not force_numeric:
        Rp = float(metric.d_density(u))
        Rpp = float(metric.d2_density(u))
        w_prime = Rpp / R - (Rp / R) ** 2
    else:
        h = step if step is not None else max(tols.diff_step, tols.diff_step * abs(u))
        h = min(h, 0.5 * (u - metric.domain_lo), 0.5 * (metric.domain_hi - u))
        if h < 4.0 * np.finfo(float).eps * max(1.0, abs(u)):
            raise DerivativeUnavailable(f"cannot difference at {u} without leaving the domain")
        w_hi = float(metric.d_density(u + h)) / float(metric.density(u + h))
        w_lo = float(metric.d_density(u - h)) / float(metric.density(u - h))
        w_prime = (w_hi - w_lo) / (2.0 * h)
    return -w_prime / (R * R)


@dataclass(frozen=True)
class LogConcavityReport:
    min_curvature: float
    worst_u: float
    is_nonnegative: bool
    exp_majorant_ok: bool
    majorant_min_slack: float


def log_concavity_report(metric: Metric1D, grid: Sequence[float],
                         tols: Tolerances = DEFAULT) -> LogConcavityReport:
    """Scans curvature and the exponential majorant R(t) <= R(a) e^{(R'(a)/R(a))(t-a)}.

    The majorant is anchored at 0 when 0 is interior (the usual unit-interval
    case), otherwise at the grid midpoint.
    """
    grid = np.asarray(grid, float)
    for u in (grid.min(), grid.max()):
        metric.require_inside(float(u))
    curv = np.array([curvature_at(metric, float(u), tols=tols) for u in grid])
    i = int(np.argmin(curv))
    anchor = 0.0 if metric.domain_lo < 0.0 < metric.domain_hi \
        else float(np.median(grid))
    slope = float(metric.d_density(anchor)) / float(metric.density(anchor))
    majorant = float(metric.density(anchor)) * np.exp(slope * (grid - anchor))
    slack = majorant - np.asarray(metric.density(grid), float)
    return LogConcavityReport(
        min_curvature=float(curv[i]),
        worst_u=float(grid[i]),
        is_nonnegative=bool(curv[i] >= -tols.slack_tol),
        exp_majorant_ok=bool(slack.min() >= -tols.slack_tol),
        majorant_min_slack=float(slack.min()),
    )


# ---------------------------------------------------------------------------
# mass and the centered primitive H
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=256)
def _mass_parts(metric: Metric1D, quad_tol: float, ceiling: float) -> tuple[float, float]:
    # A = integral over (0, 1), B = integral over (-1, 0); both endpoints open
    A = integrate_to_endpoint(lambda t: float(metric.density(t)), 0.0, 1.0,
                              tol=quad_tol, ceiling=ceiling)
    B = integrate_to_endpoint(lambda t: float(metric.density(-t)), 0.0, 1.0,
                              tol=quad_tol, ceiling=ceiling)
    return A, B


def mass(metric: Metric1D, tols: Tolerances = DEFAULT) -> float:
    """r = (1/2) * integral of R over (-1, 1)."""
    _require_unit_domain(metric)
    A, B = _mass_parts(metric, tols.quad_abs_tol, tols.quad_ceiling)
    return 0.5 * (A + B)


def transform_H(metric: Metric1D, u: float, tols: Tolerances = DEFAULT) -> float:
    """Centered primitive H(u) = -(A - B)/2 + integral of R from 0 to u."""
    _require_unit_domain(metric)
    u = float(u)
    metric.require_inside(u)
    A, B = _mass_parts(metric, tols.quad_abs_tol, tols.quad_ceiling)
    core = adaptive_simpson(lambda t: float(metric.density(t)), 0.0, u,
                            tol=tols.quad_abs_tol, ceiling=tols.quad_ceiling)
    return -0.5 * (A - B) + core


def inverse_H(metric: Metric1D, t: float, tols: Tolerances = DEFAULT) -> float:
    """The unique u in (-1, 1) with H(u) = t, for t strictly inside (-r, r)."""
    r = mass(metric, tols=tols)
    t = float(t)
    if abs(t) >= r:
        raise OutOfRange(f"target {t} outside (-r, r) with r = {r}")
    lo, hi = -1.0 + 1e-14, 1.0 - 1e-14
    u = 0.0
    h_u = transform_H(metric, u, tols=tols)
    target_tol = tols.inverse_rel_tol * r
    for _ in range(120):
        if abs(h_u - t) <= target_tol:
            return u
        if h_u < t:
            lo = u
        else:
            hi = u
        density = float(metric.density(u))
        candidate = u - (h_u - t) / density if density > 0 else math.nan
        u = candidate if (math.isfinite(candidate) and lo < candidate < hi) else 0.5 * (lo + hi)
        h_u = transform_H(metric, u, tols=tols)
    if abs(h_u - t) <= 10 * target_tol:
        return u
    raise OutOfRange(f"inversion stalled at |H(u)-t| = {abs(h_u - t):.3e}")


# ---------------------------------------------------------------------------
# fast vectorized H tables for the solvers
# ---------------------------------------------------------------------------

class HTransform:
    """Cumulative table for H with vectorized evaluation and inversion.

    Built once per metric; agrees with transform_H to the quadrature
    tolerance (tested).  h() and h_inv() accept numpy arrays.

    For densities of infinite mass the centered H of the unit interval does
    not exist, but the primitive is still strictly increasing, so a table
    restricted to a compact value range (normalized=False, H(0) = 0) still
    lifts boundary data whose values stay inside that range.
    """

    _GL_NODES, _GL_WEIGHTS = gauss_legendre(12)

    def __init__(self, metric: Metric1D, cells: int = 4096, tols: Tolerances = DEFAULT,
                 lo: float = -1.0, hi: float = 1.0, normalized: bool = True):
        _require_unit_domain(metric)
        self.metric = metric
        self.tols = tols
        self.normalized = normalized
        if normalized:
            lo, hi = -1.0, 1.0
            self.r = mass(metric, tols=tols)  # raises NonIntegrable early
        else:
            if not (-1.0 <= lo < 0.0 < hi <= 1.0):
                raise DomainError("range table needs lo < 0 < hi inside [-1, 1]")
            self.r = math.nan
        nodes = np.linspace(lo, hi, cells + 1)
        piece = segments_gauss(metric.density, nodes[:-1, None], nodes[1:, None],
                               self._GL_NODES, self._GL_WEIGHTS)
        cum = np.concatenate([[0.0], np.cumsum(piece)])
        self._nodes = nodes
        if normalized:
            # H(u) = C(u) - r with C the cumulative integral from -1;
            # recenter at the exact H(0) = (B - A)/2 to kill cumulative drift
            A, B = _mass_parts(metric, tols.quad_abs_tol, tols.quad_ceiling)
            self._h_nodes = cum - self.r
            k0 = cells // 2
            self._h_nodes += (B - self.r) - self._h_nodes[k0]
        else:
            k0 = int(np.searchsorted(nodes, 0.0))
            offset = cum[k0] + adaptive_simpson(
                lambda t: float(metric.density(t)), float(nodes[k0]), 0.0,
                tol=tols.quad_abs_tol, ceiling=tols.quad_ceiling)
            self._h_nodes = cum - offset

    def h(self, u: np.ndarray) -> np.ndarray:
        u = np.asarray(u, float)
        flat = np.ravel(u)
        idx = np.clip(np.searchsorted(self._nodes, flat, side="right") - 1,
                      0, len(self._nodes) - 2)
        base = self._nodes[idx]
        local = segments_gauss(self.metric.density, base[:, None], flat[:, None],
                               self._GL_NODES, self._GL_WEIGHTS)
        return (self._h_nodes[idx] + local).reshape(u.shape)

    def h_inv(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, float)
        flat = np.ravel(t)
        if self.normalized:
            if np.any(np.abs(flat) >= self.r):
                raise OutOfRange("target outside (-r, r)")
        elif np.any(flat <= self._h_nodes[0]) or np.any(flat >= self._h_nodes[-1]):
            raise OutOfRange("target outside the tabulated transform range")
        j = np.clip(np.searchsorted(self._h_nodes, flat), 1, len(self._nodes) - 1)
        lo = self._nodes[j - 1].copy()
        hi = self._nodes[j].copy()
        u = lo + (hi - lo) * np.clip(
            (flat - self._h_nodes[j - 1])
            / np.maximum(self._h_nodes[j] - self._h_nodes[j - 1], 1e-300),
            0.0, 1.0)
        scale = self.r if self.normalized else float(np.max(np.abs(self._h_nodes)))
        target = self.tols.inverse_rel_tol * scale
        for _ in range(80):
            res = self.h(u) - flat
            if np.max(np.abs(res)) <= target:
                break
            above = res > 0
            hi = np.where(above, u, hi)
            lo = np.where(above, lo, u)
            dens = np.asarray(self.metric.density(u), float)
            with np.errstate(divide="ignore", invalid="ignore"):
                newton = u - res / dens
            bad = ~np.isfinite(newton) | (newton <= lo) | (newton >= hi)
            u = np.where(bad, 0.5 * (lo + hi), newton)
        return u.reshape(t.shape)


@functools.lru_cache(maxsize=64)
def transform_table(metric: Metric1D) -> HTransform:
    return HTransform(metric)


# ---------------------------------------------------------------------------
# mollification
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=1)
def _bump_norm() -> float:
    return adaptive_simpson(lambda z: math.exp(-1.0 / (1.0 - z * z)) if abs(z) < 1 else 0.0,
                            -1.0, 1.0, tol=1e-15, ceiling=10.0)


def bump(z: np.ndarray) -> np.ndarray:
    """Smooth even bump supported in (-1, 1) with unit integral."""
    z = np.asarray(z, float)
    inside = np.abs(z) < 1.0
    out = np.zeros_like(z)
    zz = np.where(inside, z, 0.0)
    with np.errstate(divide="ignore", over="ignore"):
        out = np.where(inside, np.exp(-1.0 / (1.0 - zz * zz)), 0.0)
    return out / _bump_norm()


def _reflected(psi_fn: Callable, x: np.ndarray) -> np.ndarray:
    """Extend an odd map on [-1, 1] to [-2, 2] by point reflection at (+-1, +-1)."""
    x = np.asarray(x, float)
    core = np.clip(x, -1.0, 1.0)
    val = np.asarray(psi_fn(core), float)
    hi = x > 1.0
    lo = x < -1.0
    if np.any(hi):
        val = np.where(hi, 2.0 - np.asarray(psi_fn(np.clip(2.0 - x, -1.0, 1.0)), float), val)
    if np.any(lo):
        val = np.where(lo, -2.0 - np.asarray(psi_fn(np.clip(-2.0 - x, -1.0, 1.0)), float), val)
    return val


def _reflected_deriv(dpsi_fn: Callable, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, float)
    folded = np.where(x > 1.0, 2.0 - x, np.where(x < -1.0, -2.0 - x, x))
    return np.asarray(dpsi_fn(np.clip(folded, -1.0, 1.0)), float)


_MOLLIFY_GL = gauss_legendre(32)


# extra z-splits so fixed-order Gauss handles the bump's flat endpoints
_BUMP_SPLITS = np.array([-0.9, -0.5, 0.5, 0.9])


def _convolve_with_bump(fn: Callable, x: np.ndarray, epsilon: float,
                        cuts: np.ndarray) -> np.ndarray:
    """integral over z in (-1,1) of fn(x - eps z) * bump(z), segment-split at cuts."""
    x = np.asarray(x, float)
    flat = np.ravel(x)
    z_cuts = (flat[:, None] - cuts[None, :]) / epsilon
    z_cuts = np.concatenate(
        [z_cuts, np.broadcast_to(_BUMP_SPLITS, (len(flat), len(_BUMP_SPLITS)))], axis=1)
    z_cuts = np.clip(z_cuts, -1.0, 1.0)
    pts = np.concatenate([np.full((len(flat), 1), -1.0), np.sort(z_cuts, axis=1),
                          np.full((len(flat), 1), 1.0)], axis=1)
    nodes, weights = _MOLLIFY_GL
    lo, hi = pts[:, :-1], pts[:, 1:]

    def integrand(z):
        return fn(flat[:, None, None] - epsilon * z) * bump(z)

    out = segments_gauss(integrand, lo, hi, nodes, weights)
    return out.reshape(x.shape)


def mollified_density_exact(psi: Callable, epsilon: float) -> Callable:
    """Direct convolution evaluation of the smoothed derivative (slow path)."""
    knots = np.asarray(getattr(psi, "knots", (0.0, 1.0)), float)
    knots = np.unique(np.concatenate([knots, -knots, 2.0 - knots, knots - 2.0]))
    deriv = getattr(psi, "deriv", None)
    if deriv is None:
        h = 1e-7

        def dfn(x, _psi=psi, _h=h):
            x = np.asarray(x, float)
            return (_reflected(_psi, x + _h) - _reflected(_psi, x - _h)) / (2.0 * _h)
    else:
        def dfn(x, _d=deriv):
            return _reflected_deriv(_d, x)

    norm = float(_convolve_with_bump(lambda x: _reflected(psi, x),
                                     np.array([1.0]), epsilon, knots)[0])

    def density(u):
        return _convolve_with_bump(dfn, np.asarray(u, float), epsilon, knots) / norm

    return density


def mollify(psi: Callable, epsilon: float, tols: Tolerances = DEFAULT,
            table_points: int = 8193) -> Metric1D:
    """Smooth the derivative of an odd increasing piecewise map into a metric.

    The map is extended beyond [-1, 1] by point reflection (which pins the
    normalization: the smoothed map still sends 1 to 1 and stays odd), then
    its derivative is convolved with the scaled bump.  The convolution is
    sampled densely and carried as a cubic spline so downstream solvers can
    evaluate the density cheaply; the spline is what the returned metric *is*.
    """
    if not (0.0 < epsilon < 1.0):
        raise InvalidInput("epsilon must lie in (0, 1)")
    probe = np.linspace(-1.0, 1.0, 513)
    vals = np.asarray(psi(probe), float)
    if abs(vals[-1] - 1.0) > 1e-9 or abs(vals[0] + 1.0) > 1e-9:
        raise InvalidInput("psi must map -1 to -1 and 1 to 1")
    if np.max(np.abs(vals + vals[::-1])) > 1e-9:
        raise InvalidInput("psi must be odd")
    if np.any(np.diff(vals) < -1e-12):
        raise InvalidInput("psi must be non-decreasing")

    from scipy.interpolate import CubicSpline
    exact = mollified_density_exact(psi, epsilon)
    xs = np.linspace(-1.0, 1.0, table_points)
    spline = CubicSpline(xs, exact(xs))
    d_spline = spline.derivative()

    label = getattr(psi, "label", "psi")
    return Metric1D(-1.0, 1.0,
                    lambda u: spline(np.asarray(u, float)),
                    lambda u: d_spline(np.asarray(u, float)),
                    None,
                    name=f"mollified({label}, eps={epsilon:g})")
