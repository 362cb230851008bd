"""Closed convex plane curves represented by the Fourier coefficients of the
inverse tangent-angle derivative.

A smooth, strictly convex closed curve of length 2*pi is encoded by the
tangent angle phi(s) as a function of arc length.  Working with the inverse
function, its derivative is a Fourier series

    (phi^-1)'(t) = 1 + sum_{n>=2} n*a_n*cos(nt) - n*b_n*sin(nt),

whose constant term is fixed by the winding number and whose first harmonic
is absent because the curve closes.  Integrating once,

    phi^-1(t) = C + t + g(t) + f(t),

where g collects the even-index harmonics (pi-periodic part) and f the odd
ones (anti-periodic part).  The zeros of f are the critical angles of the
curve, and the total variation of f is bounded above by 2*pi for every
admissible curve.  This module holds the curve representation, validation,
the f/g split, monotone inversion back to arc length, and the zero/variation
machinery on f.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .errors import DegenerateProfile, NoConvergence, NonMonotone, RejectedCurve

TWO_PI = 2.0 * np.pi

#: Default strict-convexity margin for min (phi^-1)'.
EPS_CONVEX = 1e-3

#: Newton tolerance (in t) and iteration cap for the monotone inversion.
NEWTON_TOL = 1e-12
NEWTON_MAX_ITER = 50

#: Scan grids carry at least this many points regardless of max_index.
MIN_GRID = 512


def _as_coeff_map(coeffs: Mapping[int, float] | None) -> dict[int, float]:
    out = {}
    for n, v in (coeffs or {}).items():
        n = int(n)
        if n < 2:
            raise ValueError(f"coefficient index {n} < 2: the constant term is fixed "
                             "and the first harmonic is excluded by closure")
        v = float(v)
        if v != 0.0:
            out[n] = v
    return out


@dataclass(frozen=True)
class FourierCurve:
    """Truncated Fourier data of (phi^-1)'; the single source of truth for a curve.

    ``a`` holds sine coefficients and ``b`` cosine coefficients of phi^-1,
    indexed by harmonic n >= 2.  ``c_offset`` is the integration constant C
    fixed by the parametrization choice phi(0) = 0.
    """

    a: dict[int, float] = field(default_factory=dict)
    b: dict[int, float] = field(default_factory=dict)
    max_index: int = 2
    c_offset: float = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        object.__setattr__(self, "a", _as_coeff_map(self.a))
        object.__setattr__(self, "b", _as_coeff_map(self.b))
        hi = max([2, *self.a.keys(), *self.b.keys()])
        object.__setattr__(self, "max_index", max(int(self.max_index), hi))
        if self.c_offset is None:
            # phi^-1(0) = C + sum b_n must vanish so that phi(0) = 0.
            object.__setattr__(self, "c_offset", -sum(self.b.values()))

    def phi_inv(self, t: np.ndarray | float) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        out = self.c_offset + t
        for n, v in self.a.items():
            out = out + v * np.sin(n * t)
        for n, v in self.b.items():
            out = out + v * np.cos(n * t)
        return out

    def phi_inv_prime(self, t: np.ndarray | float) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        out = np.ones_like(t)
        for n, v in self.a.items():
            out = out + n * v * np.cos(n * t)
        for n, v in self.b.items():
            out = out - n * v * np.sin(n * t)
        return out

    def coefficient_budget(self) -> float:
        """Upper bound on |phi^-1(t) - t - C|, used to bracket the inversion."""
        return sum(abs(v) for v in self.a.values()) + sum(abs(v) for v in self.b.values())

    def grid_size(self, factor: int = 16) -> int:
        return max(MIN_GRID, factor * self.max_index)


@dataclass(frozen=True)
class ValidationReport:
    passed: bool
    min_value: float
    argmin_t: float
    eps_convex: float
    n_grid: int


@dataclass(frozen=True)
class ProfileDecomposition:
    """Odd/even harmonic split of phi^-1 - t - C.

    ``f_coeffs`` maps odd n to (a_n, b_n), ``g_coeffs`` even n likewise.
    The sampled values on ``t_grid`` satisfy f(t+pi) = -f(t) and
    g(t+pi) = g(t) by construction.
    """

    f_coeffs: dict[int, tuple[float, float]]
    g_coeffs: dict[int, tuple[float, float]]
    t_grid: np.ndarray
    f_values: np.ndarray
    g_values: np.ndarray
    max_index: int

    def f(self, t: np.ndarray | float) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        for n, (an, bn) in self.f_coeffs.items():
            out = out + an * np.sin(n * t) + bn * np.cos(n * t)
        return out

    def g(self, t: np.ndarray | float) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        for n, (an, bn) in self.g_coeffs.items():
            out = out + an * np.sin(n * t) + bn * np.cos(n * t)
        return out

    def f_prime(self, t: np.ndarray | float) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        for n, (an, bn) in self.f_coeffs.items():
            out = out + n * an * np.cos(n * t) - n * bn * np.sin(n * t)
        return out

    def g_prime(self, t: np.ndarray | float) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        for n, (an, bn) in self.g_coeffs.items():
            out = out + n * an * np.cos(n * t) - n * bn * np.sin(n * t)
        return out


@dataclass(frozen=True)
class SampledCurve:
    """Uniform arc-length samples of the tangent angle and curvature."""

    n_points: int
    s_grid: np.ndarray
    phi: np.ndarray
    kappa: np.ndarray


def validate_curve(curve: FourierCurve, eps_convex: float = EPS_CONVEX) -> ValidationReport:
    """Check strict convexity: min (phi^-1)' >= eps_convex on a dense grid.

    The grid minimum is polished with one parabolic step so that the reported
    value matches the true minimum of the trigonometric polynomial.  Raises
    RejectedCurve when the margin is violated.
    """
    n_grid = curve.grid_size()
    t = np.linspace(0.0, TWO_PI, n_grid, endpoint=False)
    vals = curve.phi_inv_prime(t)
    i = int(np.argmin(vals))
    h = TWO_PI / n_grid
    tm, t0, tp = t[i] - h, t[i], t[i] + h
    fm, f0, fp = curve.phi_inv_prime(np.array([tm, t0, tp]))
    denom = fm - 2.0 * f0 + fp
    t_star = t0 if abs(denom) < 1e-300 else t0 + 0.5 * h * (fm - fp) / denom
    t_star = float(np.clip(t_star, tm, tp))
    min_value = float(min(f0, curve.phi_inv_prime(t_star)))
    argmin_t = float(t_star % TWO_PI if min_value < f0 else t0 % TWO_PI)
    if not min_value >= eps_convex:
        raise RejectedCurve(min_value, argmin_t, eps_convex)
    return ValidationReport(True, min_value, argmin_t, eps_convex, n_grid)


def decompose(curve: FourierCurve) -> ProfileDecomposition:
    """Split phi^-1 - t - C into the anti-periodic f and pi-periodic g parts."""
    f_coeffs, g_coeffs = {}, {}
    for n in sorted(set(curve.a) | set(curve.b)):
        pair = (curve.a.get(n, 0.0), curve.b.get(n, 0.0))
        (f_coeffs if n % 2 else g_coeffs)[n] = pair
    t_grid = np.linspace(0.0, TWO_PI, curve.grid_size(), endpoint=False)

    def series(coeffs):
        out = np.zeros_like(t_grid)
        for n, (an, bn) in coeffs.items():
            out += an * np.sin(n * t_grid) + bn * np.cos(n * t_grid)
        return out

    return ProfileDecomposition(f_coeffs, g_coeffs, t_grid,
                                series(f_coeffs), series(g_coeffs), curve.max_index)


def invert_phi(curve: FourierCurve, n_points: int = 2048) -> SampledCurve:
    """Recover phi(s) and kappa(s) on a uniform arc-length grid.

    For each s the equation phi^-1(t) = s is solved by safeguarded Newton
    (monotone since (phi^-1)' > 0); the curvature is kappa = 1/(phi^-1)'.
    """
    s = TWO_PI * np.arange(n_points) / n_points
    margin = abs(curve.c_offset) + curve.coefficient_budget() + 1e-6
    lo = s - margin
    hi = s + margin
    t = s.copy()
    for _ in range(NEWTON_MAX_ITER):
        r = curve.phi_inv(t) - s
        d = curve.phi_inv_prime(t)
        if np.any(d <= 0.0):
            raise NonMonotone("(phi^-1)' <= 0 during inversion; validate the curve first")
        if np.max(np.abs(r) / d) < NEWTON_TOL:
            break
        hi = np.where(r > 0.0, t, hi)
        lo = np.where(r < 0.0, t, lo)
        t_new = t - r / d
        # strict comparisons: a converged iterate sitting on its own bracket
        # bound must not be bisected away
        outside = (t_new < lo) | (t_new > hi)
        t = np.where(outside, 0.5 * (lo + hi), t_new)
    resid = np.max(np.abs(curve.phi_inv(t) - s))
    if resid > 1e-10:
        raise NoConvergence(f"inversion residual {resid:.3e} after {NEWTON_MAX_ITER} iterations")
    kappa = 1.0 / curve.phi_inv_prime(t)
    return SampledCurve(n_points, s, t, kappa)


def closure_residuals(sampled: SampledCurve) -> tuple[float, float]:
    """(|int cos phi ds|, |int sin phi ds|); both vanish for closed curves."""
    return (abs(float(np.mean(np.cos(sampled.phi)))) * TWO_PI,
            abs(float(np.mean(np.sin(sampled.phi)))) * TWO_PI)


def winding_integral(sampled: SampledCurve) -> float:
    """int kappa ds; equals 2*pi once around."""
    return float(np.mean(sampled.kappa)) * TWO_PI


def _scan_zeros(fun: Callable[[np.ndarray], np.ndarray], n_grid: int,
                dedupe_tol: float = 1e-9) -> np.ndarray:
    """All simple zeros of a 2*pi-periodic function, by sign scan + bisection."""
    t = np.linspace(0.0, TWO_PI, n_grid, endpoint=False)
    v = fun(t)
    t_ext = np.append(t, TWO_PI)
    v_ext = np.append(v, v[0])
    exact = t[v == 0.0]
    idx = np.where(v_ext[:-1] * v_ext[1:] < 0.0)[0]
    lo, hi = t_ext[idx], t_ext[idx + 1]
    flo = v_ext[idx]
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        fm = fun(mid)
        hit = fm == 0.0
        down = flo * fm < 0.0
        hi = np.where(hit | down, mid, hi)
        lo = np.where(hit | ~down, mid, lo)
        flo = np.where(down | hit, flo, fm)
    roots = np.concatenate([exact, 0.5 * (lo + hi)]) % TWO_PI
    roots.sort()
    if roots.size > 1:
        keep = np.diff(roots, prepend=roots[-1] - TWO_PI) > dedupe_tol
        roots = roots[keep]
    return roots


def critical_angles(profile: ProfileDecomposition) -> np.ndarray:
    """Zeros of f in [0, 2*pi), sorted.  These are the critical angles; every
    closed curve has at least six of them, in antipodal pairs."""
    scale = float(np.max(np.abs(profile.f_values))) if profile.f_values.size else 0.0
    if scale < 1e-12:
        raise DegenerateProfile("f is identically zero; all angles are critical")
    n_grid = max(MIN_GRID, 16 * profile.max_index)
    return _scan_zeros(profile.f, n_grid)


def total_variation(profile: ProfileDecomposition) -> float:
    """Total variation int |f'(t)| dt over one period.

    f' keeps one sign between consecutive zeros, so the integral is the exact
    cyclic sum of |f(z_{i+1}) - f(z_i)| over the zeros z_i of f', each located
    to bisection accuracy.  Deterministic for a fixed scan grid.
    """
    if not profile.f_coeffs:
        return 0.0
    n_grid = max(2 * MIN_GRID, 32 * profile.max_index)
    t = np.linspace(0.0, TWO_PI, n_grid, endpoint=False)
    if float(np.max(np.abs(profile.f_prime(t)))) < 1e-14:
        return 0.0
    z = _scan_zeros(profile.f_prime, n_grid)
    fz = profile.f(z)
    return float(np.sum(np.abs(np.diff(fz, append=fz[0]))))


def random_curve(rng: np.random.Generator, max_index: int = 6, rho: float = 0.5,
                 eps_convex: float = EPS_CONVEX, max_tries: int = 1000) -> FourierCurve:
    """Rejection-sample a valid curve with coefficients a_n, b_n ~ U[-rho/n^2, rho/n^2].

    The 1/n^2 decay keeps a healthy convexity margin while exercising many
    harmonics.
    """
    for _ in range(max_tries):
        a = {n: rng.uniform(-rho / n**2, rho / n**2) for n in range(2, max_index + 1)}
        b = {n: rng.uniform(-rho / n**2, rho / n**2) for n in range(2, max_index + 1)}
        curve = FourierCurve(a=a, b=b, max_index=max_index)
        try:
            validate_curve(curve, eps_convex)
        except RejectedCurve:
            continue
        return curve
    raise NoConvergence(f"no valid curve after {max_tries} draws (rho={rho})")
