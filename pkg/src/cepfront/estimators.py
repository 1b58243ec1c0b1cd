"""Scikit-learn compatible wrapper around the feature pipelines."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .audio import Waveform
from .errors import InvalidParameterError
from .pipeline import PipelineConfig, extract
from .spectral import FrontendConfig
from .validation import check_feature_type, check_waveform


class CepstralFeatures(BaseEstimator, TransformerMixin):
    """Stateless transformer from raw waveforms to cepstral features.

    The frontend knobs are exposed flat so they can be grid-searched; the
    specialized stage parameters are passed as config objects
    (MediumTimeConfig, MeanPowerConfig, PcenConfig) or left at None for
    the defaults.

    Parameters
    ----------
    feature : str
        One of "mfcc", "pncc", "spncc", "cpncc", "scpncc".
    sample_rate_hz : int
        Rate the incoming sample arrays are assumed to have.
    fmax_hz : float or None
        None means the Nyquist frequency.
    medium_time, mean_power, pcen : config objects or None
        Stage parameter bundles; None selects the documented defaults.

    Examples
    --------
    >>> from cepfront import CepstralFeatures, synth_tone
    >>> tone = synth_tone(440.0, 1.0)
    >>> feats = CepstralFeatures(feature="spncc").fit_transform(tone.samples)
    >>> feats.shape
    (98, 30)
    """

    def __init__(
        self,
        feature: str = "mfcc",
        sample_rate_hz: int = 16000,
        frame_length_ms: float = 25.0,
        hop_ms: float = 10.0,
        preemphasis: float = 0.97,
        window: str = "hamming",
        fft_size: int = 512,
        num_filters: int = 60,
        fmin_hz: float = 20.0,
        fmax_hz: float | None = None,
        num_ceps: int = 30,
        power_exponent: float = 1.0 / 15.0,
        apply_dct: bool = True,
        medium_time=None,
        mean_power=None,
        pcen=None,
    ):
        self.feature = feature
        self.sample_rate_hz = sample_rate_hz
        self.frame_length_ms = frame_length_ms
        self.hop_ms = hop_ms
        self.preemphasis = preemphasis
        self.window = window
        self.fft_size = fft_size
        self.num_filters = num_filters
        self.fmin_hz = fmin_hz
        self.fmax_hz = fmax_hz
        self.num_ceps = num_ceps
        self.power_exponent = power_exponent
        self.apply_dct = apply_dct
        self.medium_time = medium_time
        self.mean_power = mean_power
        self.pcen = pcen

    def _pipeline_config(self) -> PipelineConfig:
        frontend = FrontendConfig(
            frame_length_ms=self.frame_length_ms,
            hop_ms=self.hop_ms,
            preemphasis=self.preemphasis,
            window=self.window,
            fft_size=self.fft_size,
            num_filters=self.num_filters,
            fmin_hz=self.fmin_hz,
            fmax_hz=self.fmax_hz,
        )
        kwargs = {"frontend": frontend}
        if self.medium_time is not None:
            kwargs["medium_time"] = self.medium_time
        if self.mean_power is not None:
            kwargs["mean_power"] = self.mean_power
        if self.pcen is not None:
            kwargs["pcen"] = self.pcen
        return PipelineConfig(
            num_ceps=self.num_ceps,
            power_exponent=self.power_exponent,
            apply_dct=self.apply_dct,
            **kwargs,
        )

    def fit(self, X=None, y=None):
        """Validate the parameters; the transform itself is stateless."""
        check_feature_type(self.feature)
        self.config_ = self._pipeline_config()
        return self

    def transform(self, X):
        """Extract features from waveforms.

        A 1-D array (or Waveform) is treated as a single waveform and
        yields one (frames, coeffs) matrix. A 2-D array is treated as a
        batch of equal-length waveforms and yields a stacked
        (n, frames, coeffs) array. Any other iterable of 1-D arrays
        (possibly ragged) yields a list of matrices.
        """
        feature = check_feature_type(self.feature)
        cfg = getattr(self, "config_", None) or self._pipeline_config()

        if isinstance(X, Waveform):
            return self._extract_one(X, feature, cfg)
        if isinstance(X, np.ndarray):
            if X.ndim == 1:
                return self._extract_one(X, feature, cfg)
            if X.ndim == 2:
                return np.stack([self._extract_one(row, feature, cfg) for row in X])
            raise InvalidParameterError("expected a 1-D or 2-D sample array")
        items = list(X)
        if items and np.isscalar(items[0]):
            return self._extract_one(np.asarray(items, dtype=np.float64), feature, cfg)
        return [self._extract_one(item, feature, cfg) for item in items]

    def _extract_one(self, samples, feature: str, cfg: PipelineConfig) -> np.ndarray:
        wave = check_waveform(samples, self.sample_rate_hz)
        return extract(wave, feature, cfg).values
