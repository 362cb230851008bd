"""Step-function minimizers of the total variation, and random admissible
profiles for the empirical lower-bound check.

The extremal class consists of anti-periodic two-plateau step functions: a
positive plateau beta on (tau1, m], a negative plateau -gamma on [m, tau2),
and a delta-plateau on [pi/2, pi] (peaking at delta + nu at the single point
pi/2).  Killing both first-harmonic Fourier components is a 2x2 linear
system in (beta, gamma); adding up the jumps gives the total variation
4*(delta + nu + beta + gamma), minimal when the split point m is the
midpoint of tau1 and tau2.  Random piecewise-linear anti-periodic profiles
with the same sign pattern provide an empirical check that every admissible
profile has strictly more variation than the step-function bound.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (DomainError, ExhaustedRejection, NegativeWeight,
                     SingularSystem)

SQRT2 = np.sqrt(2.0)
HALF_PI = 0.5 * np.pi


def _check_taus(tau1: float, tau2: float) -> None:
    if not 0.0 < tau1 < tau2 < HALF_PI:
        raise DomainError(f"need 0 < tau1 < tau2 < pi/2, got ({tau1}, {tau2})")


def solve_balance(tau1: float, tau2: float, m: float, delta: float) -> tuple[float, float]:
    """Plateau heights (beta, gamma) that zero both first-harmonic integrals.

    The system comes from int f sin t dt = int f cos t dt = 0 over one
    anti-period.  Rejects a singular split point (pivot under 1e-14) and any
    solution with a non-positive height, which would leave the step class.
    """
    _check_taus(tau1, tau2)
    if not tau1 < m < tau2:
        raise DomainError(f"split point m = {m} must lie in (tau1, tau2)")
    if delta <= 0.0:
        raise DomainError("delta must be positive")
    mat = np.array([
        [np.cos(tau1) - np.cos(m), np.cos(tau2) - np.cos(m)],
        [np.sin(m) - np.sin(tau1), -(np.sin(tau2) - np.sin(m))],
    ])
    det = float(np.linalg.det(mat))
    if abs(det) < 1e-14:
        raise SingularSystem(f"balance system determinant {det:.3e}")
    beta, gamma = np.linalg.solve(mat, np.array([-delta, delta]))
    if beta <= 0.0 or gamma <= 0.0:
        raise NegativeWeight(f"beta = {beta:.6g}, gamma = {gamma:.6g}")
    return float(beta), float(gamma)


@dataclass(frozen=True)
class StepFunctionSpec:
    """A member of the extremal step class, with balanced plateau heights."""

    tau1: float
    tau2: float
    m: float
    delta: float
    nu: float
    beta: float
    gamma: float


def make_step_spec(tau1: float, tau2: float, m: float, delta: float,
                   nu: float = 0.0) -> StepFunctionSpec:
    if nu < 0.0:
        raise DomainError("nu must be nonnegative")
    beta, gamma = solve_balance(tau1, tau2, m, delta)
    return StepFunctionSpec(tau1, tau2, m, delta, nu, beta, gamma)


def step_values(spec: StepFunctionSpec, t: np.ndarray) -> np.ndarray:
    """Evaluate the step function on [0, 2*pi); anti-periodic by construction."""
    t = np.asarray(t, dtype=float) % (2.0 * np.pi)
    base = t % np.pi
    sign = np.where(t < np.pi, 1.0, -1.0)
    out = np.zeros_like(base)
    out = np.where((base > spec.tau1) & (base <= spec.m), spec.beta, out)
    out = np.where((base >= spec.m) & (base < spec.tau2), -spec.gamma, out)
    out = np.where(base >= HALF_PI, spec.delta, out)
    # the single-point peak at pi/2; tolerance absorbs the modulo roundoff
    out = np.where(np.abs(base - HALF_PI) < 1e-12, spec.delta + spec.nu, out)
    return sign * out


def step_fourier_residuals(spec: StepFunctionSpec) -> tuple[float, float]:
    """(int f sin, int f cos) over the full period, from exact plateau sums.

    Both vanish for a balanced spec; this recomputes them from the plateau
    geometry rather than from the solved system.
    """
    def plateau(a, b, level):
        return (level * (np.cos(a) - np.cos(b)), level * (np.sin(b) - np.sin(a)))

    pieces = [plateau(spec.tau1, spec.m, spec.beta),
              plateau(spec.m, spec.tau2, -spec.gamma),
              plateau(HALF_PI, np.pi, spec.delta)]
    rs = 2.0 * sum(p[0] for p in pieces)
    rc = 2.0 * sum(p[1] for p in pieces)
    return float(rs), float(rc)


def step_total_variation(spec: StepFunctionSpec) -> float:
    """Sum of all jump sizes over the full period."""
    return 4.0 * (spec.delta + spec.nu + spec.beta + spec.gamma)


def plateau_sum(tau1: float, tau2: float, m, delta: float):
    """S(m) = beta + gamma as an explicit function of the split point."""
    _check_taus(tau1, tau2)
    if delta <= 0.0:
        raise DomainError("delta must be positive")
    m = np.asarray(m, dtype=float)
    den = np.sin(tau2 - m) + np.sin(m - tau1) - np.sin(tau2 - tau1)
    if np.any(den <= 0.0):
        raise DomainError("plateau-sum denominator not positive; m outside (tau1, tau2)")
    num = delta * (np.sin(tau2) - np.sin(tau1) + np.cos(tau1) - np.cos(tau2))
    out = num / den
    return float(out) if out.ndim == 0 else out


def plateau_sum_minimum(tau1: float, tau2: float, delta: float) -> float:
    """Closed-form minimum of S(m), attained at the midpoint of tau1, tau2."""
    _check_taus(tau1, tau2)
    return float(SQRT2 * delta * np.sin(0.5 * (tau1 + tau2) + 0.25 * np.pi)
                 / (2.0 * np.sin(0.25 * (tau2 - tau1)) ** 2))


@dataclass(frozen=True)
class VariationBound:
    exact: float
    relaxed: float


def min_total_variation(tau1: float, tau2: float, delta: float,
                        nu: float = 0.0) -> VariationBound:
    """Lower bound on the total variation of any admissible profile.

    The exact form uses sin((tau1 + tau2)/2 + pi/4); the relaxed form
    replaces the angle sum by the difference, which can only decrease it.
    """
    _check_taus(tau1, tau2)
    if delta <= 0.0 or nu < 0.0:
        raise DomainError("need delta > 0 and nu >= 0")
    s2 = np.sin(0.25 * (tau2 - tau1)) ** 2
    exact = 4.0 * (delta + nu) + 2.0 * SQRT2 * delta * np.sin(
        0.5 * (tau1 + tau2) + 0.25 * np.pi) / s2
    relaxed = 4.0 * (delta + nu) + 2.0 * SQRT2 * delta * np.sin(
        0.5 * (tau2 - tau1) + 0.25 * np.pi) / s2
    if relaxed > exact + 1e-12:
        raise RuntimeError("relaxed bound exceeds the exact bound; sign error")
    return VariationBound(float(exact), float(relaxed))


@dataclass(frozen=True)
class AdmissibleSample:
    """Piecewise-linear anti-periodic profile satisfying the sign-pattern and
    first-harmonic conditions, with its measured parameters."""

    knots: np.ndarray
    values: np.ndarray
    tau1: float
    tau2: float
    delta: float
    nu: float


def _pwl_first_harmonics(knots: np.ndarray, values: np.ndarray) -> tuple[float, float]:
    """(int f sin, int f cos) over [0, pi] for a piecewise-linear f, exactly."""
    p, q = knots[:-1], knots[1:]
    vp, vq = values[:-1], values[1:]
    slope = (vq - vp) / (q - p)
    a0 = vp - slope * p
    i_sin = -(a0 + slope * q) * np.cos(q) + (a0 + slope * p) * np.cos(p) \
        + slope * (np.sin(q) - np.sin(p))
    i_cos = (a0 + slope * q) * np.sin(q) - (a0 + slope * p) * np.sin(p) \
        + slope * (np.cos(q) - np.cos(p))
    return float(np.sum(i_sin)), float(np.sum(i_cos))


def sample_fourier_residuals(sample: AdmissibleSample) -> tuple[float, float]:
    """Full-period first-harmonic integrals (twice the half-period ones)."""
    rs, rc = _pwl_first_harmonics(sample.knots, sample.values)
    return 2.0 * rs, 2.0 * rc


def sample_variation(sample: AdmissibleSample) -> float:
    """Exact total variation: twice the sum of |slope|*width over [0, pi]."""
    return 2.0 * float(np.sum(np.abs(np.diff(sample.values))))


def _hat_columns(knots: np.ndarray, i: int) -> tuple[float, float]:
    """Derivative of the half-period harmonics with respect to values[i]."""
    left = _pwl_first_harmonics(knots[i - 1:i + 1], np.array([0.0, 1.0]))
    right = _pwl_first_harmonics(knots[i:i + 2], np.array([1.0, 0.0]))
    return left[0] + right[0], left[1] + right[1]


def sample_admissible(seed: int | np.random.Generator, knot_count: int = 14,
                      max_tries: int = 1000) -> AdmissibleSample:
    """Rejection-sample an admissible piecewise-linear profile.

    Knots always include 0, tau1, tau2, pi/2 and pi.  A raw draw with the
    required sign pattern is projected onto the first-harmonic-free subspace
    by adjusting two knot values strictly between tau1 and tau2 (a 2x2
    solve), where the sign pattern places no constraint.  Draws whose total
    variation exceeds 2*pi are rejected so that every accepted sample could
    come from an actual curve profile, which the plateau-ceiling bound
    presumes.
    """
    if knot_count < 8:
        raise DomainError("knot_count must be at least 8")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    for _ in range(max_tries):
        tau1 = rng.uniform(0.25, 0.55)
        tau2 = rng.uniform(tau1 + 0.5, HALF_PI - 0.08)
        n_extra = knot_count - 5
        n_mid = max(2, n_extra // 2)
        rest = n_extra - n_mid
        n_neg = rest // 3
        n_pos = rest // 3
        n_right = rest - n_neg - n_pos
        knots = [0.0, tau1, tau2, HALF_PI, np.pi]
        if n_neg:
            knots.extend(rng.uniform(0.03, tau1 - 0.03, n_neg))
        knots.extend(rng.uniform(tau1 + 0.04, tau2 - 0.04, n_mid))
        if n_pos:
            knots.extend(rng.uniform(tau2 + 0.02, HALF_PI - 0.02, n_pos))
        if n_right:
            knots.extend(rng.uniform(HALF_PI + 0.03, np.pi - 0.03, n_right))
        knots = np.array(sorted(knots))
        if np.min(np.diff(knots)) < 8e-3:
            continue
        plateau = rng.uniform(0.01, 0.06)
        values = np.zeros_like(knots)
        for i, kt in enumerate(knots):
            if kt in (0.0, tau1, tau2):
                continue
            if kt < tau1:
                values[i] = -rng.uniform(0.02, 0.25)
            elif kt < tau2:
                values[i] = rng.uniform(-0.3, 0.3)
            elif kt < HALF_PI:
                values[i] = rng.uniform(0.02, 0.25)
            else:
                values[i] = plateau * (1.0 + rng.uniform(0.0, 1.0))
        values[-1] = plateau * (1.0 + rng.uniform(0.0, 1.0))
        values[0] = -values[-1]  # anti-periodic continuity at 0 and pi

        mid = [i for i, kt in enumerate(knots) if tau1 < kt < tau2]
        j, k = mid[0], mid[-1]
        rs, rc = _pwl_first_harmonics(knots, values)
        hj = _hat_columns(knots, j)
        hk = _hat_columns(knots, k)
        mat = np.array([[hj[0], hk[0]], [hj[1], hk[1]]])
        if abs(np.linalg.det(mat)) < 1e-12:
            continue
        dv = np.linalg.solve(mat, -np.array([rs, rc]))
        values[j] += dv[0]
        values[k] += dv[1]

        if 2.0 * np.sum(np.abs(np.diff(values))) > 2.0 * np.pi:
            continue
        rs, rc = _pwl_first_harmonics(knots, values)
        if abs(2.0 * rs) > 1e-10 or abs(2.0 * rc) > 1e-10:
            continue
        if not _sign_pattern_ok(knots, values, tau1, tau2):
            continue
        right = values[knots >= HALF_PI - 1e-15]
        delta = float(right.min())
        nu = float(right.max() - right.min())
        return AdmissibleSample(knots, values, tau1, tau2, delta, nu)
    raise ExhaustedRejection(max_tries)


def _sign_pattern_ok(knots: np.ndarray, values: np.ndarray,
                     tau1: float, tau2: float) -> bool:
    tol = 1e-12
    for kt, v in zip(knots, values):
        if kt < tau1 and v >= -tol:
            return False
        if kt in (tau1, tau2) and abs(v) > tol:
            return False
        if tau2 < kt and v <= tol:
            return False
    return True
