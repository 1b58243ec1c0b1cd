"""Medium-time processing: the slow-timescale noise compensation stages.

The chain runs on mel energies E and produces a per-bin gain matrix
("transfer function") that is multiplied back onto E:

  1. running power mean over a window of neighboring frames,
  2. asymmetric noise-floor tracking, subtraction, half-wave rectification,
  3. temporal masking with a decaying peak tracker,
  4. cross-channel smoothing of the resulting gain,
  5. elementwise application of the gain to the original energies.

All time recursions are sequential in t and vectorized across channels.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, InvalidParameterError

# guards divisions by silent channels; keeps gains finite everywhere
DIVISION_FLOOR = 1e-12


@dataclass(frozen=True)
class MediumTimeConfig:
    """Tuning constants for the medium-time chain.

    window_halfwidth counts frames averaged on each side; the ans_lambda_*
    poles drive the asymmetric noise-floor tracker (slow rise, fast fall);
    floor_factor decides when a frame counts as excitation rather than
    background; masking_* control the decaying peak tracker;
    smoothing_halfwidth counts channels averaged on each side. With bypass
    set, the transfer function is forced to all-ones, which removes the
    stage from the pipeline (used for ablation and equivalence tests).
    """

    window_halfwidth: int = 2
    ans_lambda_a: float = 0.999
    ans_lambda_b: float = 0.5
    floor_factor: float = 2.0
    masking_lambda_t: float = 0.85
    masking_mu_t: float = 0.2
    smoothing_halfwidth: int = 4
    bypass: bool = False

    def __post_init__(self):
        if not 0.0 < self.ans_lambda_b <= self.ans_lambda_a < 1.0:
            raise InvalidParameterError("need 0 < ans_lambda_b <= ans_lambda_a < 1")
        if not 0.0 < self.masking_lambda_t < 1.0:
            raise InvalidParameterError("masking_lambda_t must lie in (0, 1)")
        if not 0.0 <= self.masking_mu_t <= 1.0:
            raise InvalidParameterError("masking_mu_t must lie in [0, 1]")
        if self.window_halfwidth < 0 or self.smoothing_halfwidth < 0:
            raise InvalidParameterError("halfwidths must be non-negative")
        if self.floor_factor < 1.0:
            raise InvalidParameterError("floor_factor must be at least 1")


def _windowed_mean(values: np.ndarray, halfwidth: int, axis: int) -> np.ndarray:
    """Edge-clipped running mean: divide by the actual window size at edges."""
    values = np.moveaxis(np.asarray(values, dtype=np.float64), axis, 0)
    n = values.shape[0]
    csum = np.concatenate([np.zeros((1,) + values.shape[1:]), np.cumsum(values, axis=0)])
    lo = np.maximum(np.arange(n) - halfwidth, 0)
    hi = np.minimum(np.arange(n) + halfwidth, n - 1)
    width = (hi - lo + 1).reshape((-1,) + (1,) * (values.ndim - 1))
    return np.moveaxis((csum[hi + 1] - csum[lo]) / width, 0, axis)


def medium_time_power(energies: np.ndarray, halfwidth: int) -> np.ndarray:
    """Mean energy over frames [t - halfwidth, t + halfwidth], clipped at edges."""
    if halfwidth < 0:
        raise InvalidParameterError("halfwidth must be non-negative")
    if halfwidth == 0:
        return np.asarray(energies, dtype=np.float64).copy()
    return _windowed_mean(energies, halfwidth, axis=0)


def asymmetric_lowpass(x, lambda_rising: float, lambda_falling: float, init) -> np.ndarray:
    """First-order smoother whose pole depends on the input direction.

    y[0] = init; for t >= 1 the pole is lambda_rising when x[t] >= y[t-1]
    and lambda_falling otherwise, with y[t] = pole*y[t-1] + (1-pole)*x[t].
    Operates along axis 0; trailing axes are treated as parallel channels.
    """
    if not (0.0 < lambda_rising < 1.0 and 0.0 < lambda_falling < 1.0):
        raise InvalidParameterError("smoother poles must lie in (0, 1)")
    x = np.asarray(x, dtype=np.float64)
    if x.shape[0] == 0:
        raise InvalidParameterError("input sequence must be non-empty")
    y = np.empty_like(x)
    y[0] = init
    for t in range(1, x.shape[0]):
        prev = y[t - 1]
        pole = np.where(x[t] >= prev, lambda_rising, lambda_falling)
        y[t] = pole * prev + (1.0 - pole) * x[t]
    return y


def temporal_mask(x, decay: float, floor_gain: float) -> np.ndarray:
    """Suppress values falling behind a decaying running peak.

    The peak tracker is peak[t] = max(decay*peak[t-1], x[t]) with
    peak[0] = x[0]. A value below the decayed peak is replaced by
    floor_gain times the previous peak; masking never amplifies.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.shape[0] == 0:
        raise InvalidParameterError("input sequence must be non-empty")
    masked = np.empty_like(x)
    masked[0] = x[0]
    peak = x[0].copy() if x.ndim > 1 else np.float64(x[0])
    for t in range(1, x.shape[0]):
        decayed = decay * peak
        masked[t] = np.where(x[t] >= decayed, x[t], floor_gain * peak)
        peak = np.maximum(decayed, x[t])
    return masked


def noise_suppress_and_mask(power: np.ndarray, cfg: MediumTimeConfig) -> np.ndarray:
    """Asymmetric noise suppression plus temporal masking, per channel.

    A slow-rising/fast-falling tracker estimates the noise floor, which is
    subtracted and half-wave rectified. A second tracker smooths the
    rectified signal; temporal masking runs on the rectified signal. Frames
    whose power exceeds floor_factor times the noise floor keep the larger
    of the masked value and the smoothed floor; the rest fall back to the
    smoothed floor.
    """
    power = np.asarray(power, dtype=np.float64)
    noise_floor = asymmetric_lowpass(
        power, cfg.ans_lambda_a, cfg.ans_lambda_b, init=0.9 * power[0]
    )
    rectified = np.maximum(power - noise_floor, 0.0)
    smoothed_floor = asymmetric_lowpass(
        rectified, cfg.ans_lambda_a, cfg.ans_lambda_b, init=rectified[0]
    )
    masked = temporal_mask(rectified, cfg.masking_lambda_t, cfg.masking_mu_t)
    excitation = power >= cfg.floor_factor * noise_floor
    return np.where(excitation, np.maximum(masked, smoothed_floor), smoothed_floor)


def weight_smoothing(
    suppressed: np.ndarray,
    power: np.ndarray,
    halfwidth: int,
    floor: float = DIVISION_FLOOR,
) -> np.ndarray:
    """Cross-channel mean of the suppressed/raw power ratio.

    The window [f - halfwidth, f + halfwidth] is clipped to the available
    channels; the denominator is floored so silent channels stay finite.
    """
    suppressed = np.asarray(suppressed, dtype=np.float64)
    power = np.asarray(power, dtype=np.float64)
    if suppressed.shape != power.shape:
        raise DimensionMismatchError("suppressed and raw power must share a shape")
    ratio = suppressed / np.maximum(power, floor)
    if halfwidth == 0:
        return ratio
    return _windowed_mean(ratio, halfwidth, axis=1)


def time_frequency_normalize(energies: np.ndarray, transfer: np.ndarray) -> np.ndarray:
    """Apply the per-bin gain: out[t, f] = energies[t, f] * transfer[t, f]."""
    energies = np.asarray(energies, dtype=np.float64)
    transfer = np.asarray(transfer, dtype=np.float64)
    if energies.shape != transfer.shape:
        raise DimensionMismatchError("energies and transfer function must share a shape")
    return energies * transfer


def medium_time_transfer(energies: np.ndarray, cfg: MediumTimeConfig | None = None) -> np.ndarray:
    """Gain matrix of the full medium-time chain (all-ones when bypassed)."""
    cfg = cfg or MediumTimeConfig()
    energies = np.asarray(energies, dtype=np.float64)
    if cfg.bypass:
        return np.ones_like(energies)
    power = medium_time_power(energies, cfg.window_halfwidth)
    suppressed = noise_suppress_and_mask(power, cfg)
    return weight_smoothing(suppressed, power, cfg.smoothing_halfwidth)
