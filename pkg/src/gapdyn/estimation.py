"""Recovery of damping and adjustment frequency from a sampled gap series.

Sampling the unforced oscillator at interval dt gives an exact second-order
recursion.  With r1, r2 the roots of r^2 + gamma r + alpha = 0 and
lam_i = exp(r_i dt),

    y[i] = phi1 y[i-1] + phi2 y[i-2],
    phi1 = lam1 + lam2,      phi2 = -lam1 lam2 = -exp(-gamma dt).

Both estimators fit this representation.  Innovations are modeled as
i.i.d. N(0, sigma^2 dt), which keeps the fitted sigma comparable across
sampling intervals and matches the diffusion scaling used for white-noise
forcing.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .errors import Degenerate, InvariantViolation, NonStationary
from .oscillator import OscillatorParams

# Relative width of the discriminant band treated as a repeated root when
# mapping fitted lag coefficients back to (gamma, alpha).
_REPEATED_ROOT_GUARD = 1e-10

_EPS = 2.0**-52

# Log-spaced search grid in the dimensionless pairs (gamma*dt, alpha*dt^2).
_GRID_GAMMA_DT = np.logspace(-3.0, 0.5, 13)
_GRID_ALPHA_DT2 = np.logspace(-4.0, 0.8, 13)

_MAX_ITER = 500


class Method(enum.Enum):
    """Which fitting route produced an estimate."""

    AR2_OLS = "ar2"
    MLE = "mle"


@dataclass(frozen=True)
class ObservedSeries:
    """Uniformly sampled gap observations: sampling interval and values."""

    dt: float
    values: np.ndarray

    def __post_init__(self) -> None:
        if not (math.isfinite(self.dt) and self.dt > 0.0):
            raise InvariantViolation(f"dt must be finite and > 0, got {self.dt!r}")
        arr = np.asarray(self.values, dtype=float)
        if arr.ndim != 1 or arr.size < 2:
            raise InvariantViolation("values must be a 1-d sequence with at least two samples")
        if not np.all(np.isfinite(arr)):
            raise InvariantViolation("values contain non-finite entries")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)


@dataclass(frozen=True)
class EstimationResult:
    gamma_hat: float
    alpha_hat: float
    sigma_hat: float
    loglik: float
    method: Method
    converged: bool
    n_obs: int


def discretize_exact(params: OscillatorParams, dt: float) -> tuple[float, float]:
    """Lag coefficients (phi1, phi2) of the exactly sampled recursion.

    phi2 = -exp(-gamma dt) regardless of regime; phi1 is 2 e^(-gamma dt/2)
    cos(wd dt) for complex roots and e^(r1 dt) + e^(r2 dt) for real ones.
    """
    if not (math.isfinite(dt) and dt > 0.0):
        raise InvariantViolation(f"dt must be finite and > 0, got {dt!r}")
    return _phi_pair(params.gamma, params.alpha, dt)


def _phi_pair(g: float, a: float, dt: float) -> tuple[float, float]:
    d = g * g - 4.0 * a
    if d < 0.0:
        wd = 0.5 * math.sqrt(-d)
        phi1 = 2.0 * math.exp(-0.5 * g * dt) * math.cos(wd * dt)
    else:
        s = 0.5 * math.sqrt(d)
        phi1 = math.exp((-0.5 * g + s) * dt) + math.exp((-0.5 * g - s) * dt)
    return phi1, -math.exp(-g * dt)


def conditional_loglik(series: ObservedSeries, params: OscillatorParams) -> float:
    """Gaussian log-likelihood of the sampled recursion at (gamma, alpha).

    Conditions on the first two observations; the innovation variance is
    concentrated out analytically at its maximizing value SSR/n.
    """
    lag2, lag1, target = _lagged(series.values)
    phi1, phi2 = discretize_exact(params, series.dt)
    resid = target - phi1 * lag1 - phi2 * lag2
    return _profile_loglik(resid.size, float(resid @ resid))


def estimate_ar2(series: ObservedSeries) -> EstimationResult:
    """Least-squares fit of the two-lag recursion, mapped back to (gamma, alpha).

    Regresses y[i] on (y[i-1], y[i-2]) with no intercept, then inverts the
    exact discretization: gamma_hat = -ln(-phi2)/dt, and alpha_hat is the
    product of the continuous roots ln(lam)/dt.  Raises Degenerate when the
    regression is rank-deficient (an all-zero or too-short series) and
    NonStationary when -phi2 lands outside (0, 1), where no damping
    coefficient exists.  converged is True only when alpha_hat > 0.
    """
    lag2, lag1, target = _lagged(series.values)
    phi1, phi2, ssr = _ols_two_lags(lag2, lag1, target)
    mag2 = -phi2
    if not (0.0 < mag2 < 1.0):
        raise NonStationary(f"-phi2 = {mag2!r} outside (0, 1)")
    dt = series.dt
    gamma_hat = -math.log(mag2) / dt
    alpha_hat = _root_product(phi1, phi2, dt)
    n_eff = target.size
    loglik = _profile_loglik(n_eff, ssr)
    sigma_hat = math.sqrt(ssr / n_eff / dt)
    converged = math.isfinite(alpha_hat) and alpha_hat > 0.0
    return EstimationResult(
        gamma_hat=gamma_hat,
        alpha_hat=alpha_hat,
        sigma_hat=sigma_hat,
        loglik=loglik,
        method=Method.AR2_OLS,
        converged=converged,
        n_obs=series.values.size,
    )


def estimate_mle(
    series: ObservedSeries, init: OscillatorParams | None = None
) -> EstimationResult:
    """Maximum-likelihood fit of (gamma, alpha) with sigma concentrated out.

    Searches a coarse log-spaced grid, refines from the starting guess with
    a Nelder-Mead simplex in (ln gamma, ln alpha), then polishes at machine
    precision so the refinement cannot end below any point it has seen.  The
    starting guess is `init` when given, else the least-squares estimate
    when that converges, else the best grid point.  Hitting the iteration
    cap reports converged=False with the best point found; a rank-deficient
    series raises Degenerate.
    """
    lag2, lag1, target = _lagged(series.values)
    _assert_full_rank(lag2, lag1, target)
    dt = series.dt

    def neg_loglik(gamma: float, alpha: float) -> float:
        phi1, phi2 = _phi_pair(gamma, alpha, dt)
        resid = target - phi1 * lag1 - phi2 * lag2
        return -_profile_loglik(resid.size, float(resid @ resid))

    grid_point, grid_val = None, math.inf
    for gamma in _GRID_GAMMA_DT / dt:
        for alpha in _GRID_ALPHA_DT2 / (dt * dt):
            val = neg_loglik(gamma, alpha)
            if val < grid_val:
                grid_point, grid_val = (gamma, alpha), val

    start = None
    if init is not None:
        # A zero-damping guess has no logarithm; nudge it into the interior.
        start = (max(init.gamma, 1e-8), init.alpha)
    else:
        try:
            ar2 = estimate_ar2(series)
            if ar2.converged:
                start = (ar2.gamma_hat, ar2.alpha_hat)
        except NonStationary:
            start = None
    if start is None:
        start = grid_point

    res = minimize(
        lambda x: neg_loglik(math.exp(x[0]), math.exp(x[1])),
        np.log(start),
        method="Nelder-Mead",
        options=dict(xatol=1e-14, fatol=1e-9, maxiter=_MAX_ITER, maxfev=4 * _MAX_ITER),
    )
    best_gamma, best_alpha = math.exp(res.x[0]), math.exp(res.x[1])
    best_val = float(res.fun)
    if grid_val < best_val:
        (best_gamma, best_alpha), best_val = grid_point, grid_val
    best_gamma, best_alpha, best_val = _ulp_polish(neg_loglik, best_gamma, best_alpha, best_val)

    phi1, phi2 = _phi_pair(best_gamma, best_alpha, dt)
    resid = target - phi1 * lag1 - phi2 * lag2
    ssr = float(resid @ resid)
    n_eff = target.size
    return EstimationResult(
        gamma_hat=best_gamma,
        alpha_hat=best_alpha,
        sigma_hat=math.sqrt(ssr / n_eff / dt),
        loglik=-best_val,
        method=Method.MLE,
        converged=bool(res.success),
        n_obs=series.values.size,
    )


def _lagged(values: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    return values[:-2], values[1:-1], values[2:]


def _ols_two_lags(
    lag2: np.ndarray, lag1: np.ndarray, target: np.ndarray
) -> tuple[float, float, float]:
    design = np.column_stack([lag1, lag2])
    solution, _, rank, _ = np.linalg.lstsq(design, target, rcond=None)
    if rank < 2:
        raise Degenerate(f"lag regression has rank {rank} < 2")
    resid = target - design @ solution
    return float(solution[0]), float(solution[1]), float(resid @ resid)


def _assert_full_rank(lag2: np.ndarray, lag1: np.ndarray, target: np.ndarray) -> None:
    design = np.column_stack([lag1, lag2])
    rank = np.linalg.matrix_rank(design)
    if rank < 2:
        raise Degenerate(f"lag regression has rank {rank} < 2")


def _profile_loglik(n: int, ssr: float) -> float:
    # The clamp keeps the concentrated likelihood finite on noise-free data.
    ssr = max(ssr, 1e-300)
    return -0.5 * n * (math.log(2.0 * math.pi * ssr / n) + 1.0)


def _root_product(phi1: float, phi2: float, dt: float) -> float:
    """Product of the continuous roots ln(lam)/dt of lam^2 - phi1 lam - phi2.

    Complex pairs go through modulus and argument, |lam|^2 = -phi2; a guard
    band around the repeated-root boundary uses the modulus alone, where the
    split into two nearby real roots is ill-conditioned.  Principal-branch
    logarithms are used throughout.
    """
    half = 0.5 * phi1
    disc4 = half * half + phi2
    scale = max(phi1 * phi1, 4.0 * abs(phi2))
    if scale > 0.0 and abs(4.0 * disc4) <= _REPEATED_ROOT_GUARD * scale:
        ln_mod = 0.5 * math.log(-phi2)
        return (ln_mod / dt) ** 2
    if disc4 < 0.0:
        ln_mod = 0.5 * math.log(-phi2)
        theta = math.atan2(math.sqrt(-disc4), half)
        return (ln_mod * ln_mod + theta * theta) / (dt * dt)
    s = math.sqrt(disc4)
    lam_big = half + math.copysign(s, half)
    lam_small = -phi2 / lam_big
    if lam_big > 0.0:
        return math.log(lam_big) * math.log(lam_small) / (dt * dt)
    # Negative real pair: principal logs carry an i*pi each.
    return (math.log(-lam_big) * math.log(-lam_small) - math.pi * math.pi) / (dt * dt)


def _ulp_polish(neg_loglik, gamma: float, alpha: float, value: float):
    """Greedy machine-precision descent around an optimum.

    Scans multiplicative perturbations of a few ulps up to ~1e-12 relative in
    the eight axis and diagonal directions, moving to the best improvement
    until none remains.  Deterministic, at most a few thousand evaluations.
    """
    for _ in range(40):
        best = (value, gamma, alpha)
        for k in (4096.0, 1024.0, 256.0, 64.0, 16.0, 4.0, 1.0):
            step = k * _EPS
            for dg, da in (
                (step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step),
                (step, step), (-step, -step), (step, -step), (-step, step),
            ):
                cand_g = gamma * (1.0 + dg)
                cand_a = alpha * (1.0 + da)
                cand_v = neg_loglik(cand_g, cand_a)
                if cand_v < best[0]:
                    best = (cand_v, cand_g, cand_a)
        if best[0] >= value:
            break
        value, gamma, alpha = best
    return gamma, alpha, value
