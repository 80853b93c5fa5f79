"""Forcing-term constructors: deterministic impulses and seeded noise processes.

Random sequences come from the counter-based Philox engine keyed directly by
the 64-bit seed.  Gaussian variates are produced by an explicit Box-Muller
transform of the raw uniform bits rather than a library sampler, so equal
(spec, grid, seed) inputs yield bit-identical sequences on every platform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

from .errors import ImpulseOutsideGrid, InvariantViolation
from .integrate import TimeGrid

_SEED_LIMIT = 2**64
_TWO_NEG53 = 2.0**-53


def _check_seed(seed: int) -> None:
    if not (isinstance(seed, int) and 0 <= seed < _SEED_LIMIT):
        raise InvariantViolation(f"seed must be an integer in [0, 2^64), got {seed!r}")


def _check_sigma(sigma: float) -> None:
    if not (math.isfinite(sigma) and sigma >= 0.0):
        raise InvariantViolation(f"sigma must be finite and >= 0, got {sigma!r}")


@dataclass(frozen=True)
class NoShock:
    """Zero forcing at every node."""


@dataclass(frozen=True)
class Impulse:
    """A one-time shock of size `magnitude` at the grid node nearest `at`."""

    at: float
    magnitude: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.at):
            raise InvariantViolation(f"at must be finite, got {self.at!r}")
        if not math.isfinite(self.magnitude):
            raise InvariantViolation(f"magnitude must be finite, got {self.magnitude!r}")


@dataclass(frozen=True)
class WhiteNoise:
    """Independent Gaussian forcing with level sigma, drawn from `seed`."""

    sigma: float
    seed: int

    def __post_init__(self) -> None:
        _check_sigma(self.sigma)
        _check_seed(self.seed)


@dataclass(frozen=True)
class Ar1:
    """First-order autoregressive forcing with persistence rho (|rho| < 1).

    The process is scaled so its stationary standard deviation is sigma, and
    the first draw comes from the stationary distribution.
    """

    rho: float
    sigma: float
    seed: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.rho) and abs(self.rho) < 1.0):
            raise InvariantViolation(f"rho must satisfy |rho| < 1, got {self.rho!r}")
        _check_sigma(self.sigma)
        _check_seed(self.seed)


ShockSpec = NoShock | Impulse | WhiteNoise | Ar1


def standard_normals(seed: int, n: int) -> np.ndarray:
    """n deterministic standard-normal draws from a Philox stream.

    The generator is frozen for reproducibility: raw 64-bit words are mapped
    to uniforms by u = (bits >> 11) * 2^-53 (u1 gets +1 before scaling so it
    lies in (0, 1]), then paired through Box-Muller with r = sqrt(-2 ln u1)
    and angles 2 pi u2; cosines fill the even output slots, sines the odd.
    Pair k consumes raw words 2k and 2k+1, so a longer request extends a
    shorter one without disturbing its draws.
    """
    _check_seed(seed)
    if not (isinstance(n, int) and n >= 0):
        raise InvariantViolation(f"n must be an integer >= 0, got {n!r}")
    if n == 0:
        return np.empty(0)
    pairs = (n + 1) // 2
    raw = np.random.Philox(key=seed).random_raw(2 * pairs)
    u1 = ((raw[0::2] >> np.uint64(11)) + np.uint64(1)) * _TWO_NEG53
    u2 = (raw[1::2] >> np.uint64(11)) * _TWO_NEG53
    radius = np.sqrt(-2.0 * np.log(u1))
    angle = 2.0 * np.pi * u2
    out = np.empty(2 * pairs)
    out[0::2] = radius * np.cos(angle)
    out[1::2] = radius * np.sin(angle)
    return out[:n]


def realize(spec: ShockSpec, grid: TimeGrid, scaling: str = "diffusion") -> np.ndarray:
    """Forcing sequence for `spec` on `grid`, one value per node.

    With scaling="diffusion" (the default) white-noise draws are scaled by
    sigma/sqrt(dt): the per-step velocity impulse then has standard deviation
    sigma*sqrt(dt), so refining dt does not change the energy injected per
    unit time.  scaling="literal" applies sigma per step with no dt factor.
    AR(1) forcing has stationary standard deviation sigma under either mode.
    """
    if scaling not in ("diffusion", "literal"):
        raise InvariantViolation(f"scaling must be 'diffusion' or 'literal', got {scaling!r}")
    n = grid.n_steps
    if isinstance(spec, NoShock):
        return np.zeros(n)
    if isinstance(spec, Impulse):
        if spec.at < grid.t0 or spec.at > grid.t_end:
            raise ImpulseOutsideGrid(
                f"impulse at t={spec.at!r} outside grid span [{grid.t0!r}, {grid.t_end!r}]"
            )
        # Nearest node; an exact midpoint resolves to the earlier node.
        idx = math.ceil((spec.at - grid.t0) / grid.dt - 0.5)
        idx = min(max(idx, 0), n - 1)
        out = np.zeros(n)
        out[idx] = spec.magnitude
        return out
    if isinstance(spec, WhiteNoise):
        scale = spec.sigma / math.sqrt(grid.dt) if scaling == "diffusion" else spec.sigma
        return standard_normals(spec.seed, n) * scale
    if isinstance(spec, Ar1):
        draws = standard_normals(spec.seed, n)
        innov = spec.sigma * math.sqrt(1.0 - spec.rho * spec.rho) * draws
        innov[0] = spec.sigma * draws[0]
        return lfilter([1.0], [1.0, -spec.rho], innov)
    raise InvariantViolation(f"unknown shock spec {spec!r}")
