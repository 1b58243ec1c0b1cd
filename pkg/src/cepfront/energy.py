"""Energy normalization and static compression stages.

Two normalizers share this module: a single running mean over the whole
band (division by a slowly updated scalar per frame) and per-channel
energy normalization, where each channel is divided by its own
auto-regressive smoothed history before dynamic range compression.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, InvalidParameterError

_MEAN_FLOOR = 1e-12
LOG_FLOOR = 1e-10


@dataclass(frozen=True)
class MeanPowerConfig:
    """Running mean-power normalization parameters.

    lambda_mu is the forgetting factor of the mean recursion. mu_init of
    None seeds the recursion with the first frame's channel mean, which
    makes the output invariant to input scaling; a positive float pins the
    seed instead (streaming use).
    """

    lambda_mu: float = 0.999
    mu_init: float | None = None

    def __post_init__(self):
        if not 0.0 < self.lambda_mu < 1.0:
            raise InvalidParameterError("lambda_mu must lie in (0, 1)")
        if self.mu_init is not None and self.mu_init <= 0.0:
            raise InvalidParameterError("fixed mu_init must be positive")


@dataclass(frozen=True)
class PcenConfig:
    """Per-channel energy normalization parameters.

    alpha compresses the smoothed energies, delta and r set the dynamic
    range compression, epsilon guards the division. s is the smoother
    coefficient; None means the reciprocal of the channel count.
    """

    alpha: float = 0.98
    delta: float = 2.0
    r: float = 0.5
    epsilon: float = 1e-6
    s: float | None = None

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise InvalidParameterError("alpha must lie in (0, 1]")
        if self.delta < 0.0:
            raise InvalidParameterError("delta must be non-negative")
        if not 0.0 < self.r <= 1.0:
            raise InvalidParameterError("r must lie in (0, 1]")
        if self.epsilon <= 0.0:
            raise InvalidParameterError("epsilon must be positive")
        if self.s is not None and not 0.0 < self.s <= 1.0:
            raise InvalidParameterError("s must lie in (0, 1]")


def _check_energies(energies) -> np.ndarray:
    energies = np.asarray(energies, dtype=np.float64)
    if energies.ndim != 2 or energies.shape[0] < 1:
        raise InvalidParameterError("energies must be a non-empty 2-D matrix")
    if np.any(energies < 0.0):
        raise InvalidParameterError("energies must be non-negative")
    return energies


def mean_power_series(energies: np.ndarray, cfg: MeanPowerConfig | None = None) -> np.ndarray:
    """Per-frame running mean power mu[t].

    mu[t] = lambda_mu*mu[t-1] + (1-lambda_mu)*mean_f(E[t, f]), seeded per
    the config before the first update.
    """
    cfg = cfg or MeanPowerConfig()
    energies = _check_energies(energies)
    frame_means = energies.mean(axis=1)
    state = frame_means[0] if cfg.mu_init is None else cfg.mu_init
    mu = np.empty(energies.shape[0])
    for t, m in enumerate(frame_means):
        state = cfg.lambda_mu * state + (1.0 - cfg.lambda_mu) * m
        mu[t] = state
    return mu


def mean_power_normalize(energies: np.ndarray, cfg: MeanPowerConfig | None = None) -> np.ndarray:
    """Divide every frame by its running mean power (floored division)."""
    cfg = cfg or MeanPowerConfig()
    energies = _check_energies(energies)
    mu = mean_power_series(energies, cfg)
    return energies / np.maximum(mu, _MEAN_FLOOR)[:, np.newaxis]


def ar_smooth(energies: np.ndarray, s: float) -> np.ndarray:
    """First-order AR smoother per channel: M[t] = (1-s)M[t-1] + sE[t], M[0] = E[0]."""
    if not 0.0 < s <= 1.0:
        raise InvalidParameterError("s must lie in (0, 1]")
    energies = np.asarray(energies, dtype=np.float64)
    smoothed = np.empty_like(energies)
    smoothed[0] = energies[0]
    for t in range(1, energies.shape[0]):
        smoothed[t] = (1.0 - s) * smoothed[t - 1] + s * energies[t]
    return smoothed


def pcen_compress(
    energies: np.ndarray, smoothed: np.ndarray, cfg: PcenConfig | None = None
) -> np.ndarray:
    """Gain control plus root compression against a given smoothed history.

    out = (E/(M + epsilon)^alpha + delta)^r - delta^r, which is zero for
    zero input and monotonically increasing in E for fixed M.
    """
    cfg = cfg or PcenConfig()
    energies = np.asarray(energies, dtype=np.float64)
    smoothed = np.asarray(smoothed, dtype=np.float64)
    if energies.shape != smoothed.shape:
        raise DimensionMismatchError("energies and smoothed history must share a shape")
    gain_controlled = energies / (smoothed + cfg.epsilon) ** cfg.alpha
    return (gain_controlled + cfg.delta) ** cfg.r - cfg.delta**cfg.r


def pcen(energies: np.ndarray, cfg: PcenConfig | None = None) -> np.ndarray:
    """Per-channel energy normalization of a mel energy matrix."""
    cfg = cfg or PcenConfig()
    energies = _check_energies(energies)
    s = 1.0 / energies.shape[1] if cfg.s is None else cfg.s
    return pcen_compress(energies, ar_smooth(energies, s), cfg)


def power_law(energies: np.ndarray, exponent: float) -> np.ndarray:
    """Elementwise root compression E**exponent."""
    if exponent <= 0.0:
        raise InvalidParameterError("power-law exponent must be positive")
    return _check_energies(energies) ** exponent


def log_compress(energies: np.ndarray, floor: float = LOG_FLOOR) -> np.ndarray:
    """Elementwise natural log with a positive floor so silence stays finite."""
    if floor <= 0.0:
        raise InvalidParameterError("log floor must be positive")
    return np.log(np.maximum(np.asarray(energies, dtype=np.float64), floor))
