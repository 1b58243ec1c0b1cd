"""Input validation helpers for the estimator and functional layers."""

from __future__ import annotations

import numpy as np

from .audio import Waveform
from .errors import InvalidParameterError
from .pipeline import FEATURE_TYPES


def check_feature_type(name: str) -> str:
    """Normalize and validate a feature-type name."""
    normalized = str(name).lower()
    if normalized not in FEATURE_TYPES:
        raise InvalidParameterError(
            f"feature must be one of {FEATURE_TYPES}, got {name!r}"
        )
    return normalized


def check_waveform(x, sample_rate_hz: int) -> Waveform:
    """Coerce a 1-D array (or Waveform) into a finite, non-empty Waveform.

    Amplitude is deliberately not range-checked: the pipelines are defined
    for arbitrary scale.
    """
    if isinstance(x, Waveform):
        if x.sample_rate_hz != sample_rate_hz:
            raise InvalidParameterError(
                f"waveform rate {x.sample_rate_hz} Hz does not match "
                f"expected {sample_rate_hz} Hz"
            )
        samples = x.samples
    else:
        samples = np.asarray(x, dtype=np.float64)
    if samples.ndim != 1:
        raise InvalidParameterError("a waveform must be a 1-D sample array")
    if samples.size == 0:
        raise InvalidParameterError("waveform must contain at least one sample")
    if not np.all(np.isfinite(samples)):
        raise InvalidParameterError("waveform contains NaN or Inf samples")
    return Waveform(samples=samples, sample_rate_hz=sample_rate_hz)
