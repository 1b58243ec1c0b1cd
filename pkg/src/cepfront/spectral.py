"""Shared short-time spectral frontend: framing, FFT power, mel integration.

Every feature variant consumes the same time x channel matrix of mel
energies produced here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .audio import Waveform
from .errors import (
    DegenerateFilterError,
    DimensionMismatchError,
    InputTooShortError,
    InvalidParameterError,
)

_WINDOWS = {
    "hamming": np.hamming,
    "hann": np.hanning,
    "rectangular": np.ones,
}


@dataclass(frozen=True)
class FrontendConfig:
    """Framing and mel integration parameters.

    fmax_hz of None means the Nyquist frequency of the input waveform.
    """

    frame_length_ms: float = 25.0
    hop_ms: float = 10.0
    preemphasis: float = 0.97
    window: str = "hamming"
    fft_size: int = 512
    num_filters: int = 60
    fmin_hz: float = 20.0
    fmax_hz: float | None = None

    def __post_init__(self):
        if self.frame_length_ms <= 0 or self.hop_ms <= 0:
            raise InvalidParameterError("frame length and hop must be positive")
        if not 0.0 <= self.preemphasis < 1.0:
            raise InvalidParameterError("preemphasis must lie in [0, 1)")
        if self.window not in _WINDOWS:
            raise InvalidParameterError(
                f"window must be one of {sorted(_WINDOWS)}, got {self.window!r}"
            )
        if self.fft_size < 2 or self.fft_size & (self.fft_size - 1):
            raise InvalidParameterError("fft_size must be a power of two")
        if self.num_filters < 2:
            raise InvalidParameterError("need at least two mel filters")
        if self.fmin_hz < 0:
            raise InvalidParameterError("fmin_hz must be non-negative")
        if self.fmax_hz is not None and self.fmax_hz <= self.fmin_hz:
            raise InvalidParameterError("fmax_hz must exceed fmin_hz")

    def frame_samples(self, sample_rate_hz: int) -> int:
        n = round(self.frame_length_ms * sample_rate_hz / 1000.0)
        if n < 1:
            raise InvalidParameterError("frame shorter than one sample")
        if n > self.fft_size:
            raise InvalidParameterError(
                f"frame of {n} samples exceeds fft_size {self.fft_size}"
            )
        return n

    def hop_samples(self, sample_rate_hz: int) -> int:
        n = round(self.hop_ms * sample_rate_hz / 1000.0)
        if n < 1:
            raise InvalidParameterError("hop shorter than one sample")
        return n


@dataclass(frozen=True)
class Filterbank:
    """Triangular mel filters: weights is num_filters x (fft_size/2 + 1)."""

    weights: np.ndarray
    center_freqs_hz: np.ndarray


def hz_to_mel(freq_hz):
    return 2595.0 * np.log10(1.0 + np.asarray(freq_hz, dtype=np.float64) / 700.0)


def mel_to_hz(mel):
    return 700.0 * (10.0 ** (np.asarray(mel, dtype=np.float64) / 2595.0) - 1.0)


def pre_emphasize(wave: Waveform, coeff: float) -> Waveform:
    """First-order high-pass: out[n] = in[n] - coeff*in[n-1], out[0] = in[0]."""
    if not 0.0 <= coeff < 1.0:
        raise InvalidParameterError("pre-emphasis coefficient must lie in [0, 1)")
    x = wave.samples
    emphasized = np.concatenate(([x[0]], x[1:] - coeff * x[:-1]))
    return Waveform(samples=emphasized, sample_rate_hz=wave.sample_rate_hz)


def frame_signal(wave: Waveform, cfg: FrontendConfig) -> np.ndarray:
    """Slice the waveform into windowed frames.

    Frame t covers samples [t*hop, t*hop + N); the number of frames is
    1 + floor((len - N)/hop). Raises InputTooShortError when the waveform
    cannot fill a single frame.
    """
    frame_len = cfg.frame_samples(wave.sample_rate_hz)
    hop = cfg.hop_samples(wave.sample_rate_hz)
    if len(wave) < frame_len:
        raise InputTooShortError(
            f"waveform of {len(wave)} samples shorter than one {frame_len}-sample frame"
        )
    frames = np.lib.stride_tricks.sliding_window_view(wave.samples, frame_len)[::hop]
    return frames * _WINDOWS[cfg.window](frame_len)


def power_spectrum(frames: np.ndarray, fft_size: int) -> np.ndarray:
    """Squared-magnitude FFT per frame, bins 0..fft_size/2, no 1/N scaling."""
    frames = np.atleast_2d(np.asarray(frames, dtype=np.float64))
    if frames.shape[1] > fft_size:
        raise InvalidParameterError("frame length exceeds fft_size")
    spectrum = np.fft.rfft(frames, n=fft_size, axis=1)
    return spectrum.real**2 + spectrum.imag**2


def build_mel_filterbank(cfg: FrontendConfig, sample_rate_hz: int) -> Filterbank:
    """Triangular filters with centers equally spaced on the mel scale.

    Each filter ramps linearly (in mel) from zero at its lower neighbor's
    center up to one at its own center and back down; weights are sampled
    at the FFT bin frequencies.
    """
    nyquist = sample_rate_hz / 2.0
    fmax = nyquist if cfg.fmax_hz is None else cfg.fmax_hz
    if not 0.0 <= cfg.fmin_hz < fmax <= nyquist:
        raise InvalidParameterError(
            f"need 0 <= fmin < fmax <= {nyquist} Hz, got [{cfg.fmin_hz}, {fmax}]"
        )
    num_bins = cfg.fft_size // 2 + 1
    bin_mels = hz_to_mel(np.arange(num_bins) * sample_rate_hz / cfg.fft_size)
    mel_points = np.linspace(hz_to_mel(cfg.fmin_hz), hz_to_mel(fmax), cfg.num_filters + 2)

    left = mel_points[:-2, np.newaxis]
    center = mel_points[1:-1, np.newaxis]
    right = mel_points[2:, np.newaxis]
    rising = (bin_mels - left) / (center - left)
    falling = (right - bin_mels) / (right - center)
    weights = np.clip(np.minimum(rising, falling), 0.0, None)

    if np.any(weights.sum(axis=1) <= 0.0):
        raise DegenerateFilterError(
            f"{cfg.num_filters} filters over {num_bins} bins leave some filter empty"
        )
    return Filterbank(weights=weights, center_freqs_hz=mel_to_hz(mel_points[1:-1]))


def apply_filterbank(power_spec: np.ndarray, fb: Filterbank) -> np.ndarray:
    """Integrate FFT power into mel channels: out[t, f] = sum_k w[f, k] p[t, k]."""
    power_spec = np.asarray(power_spec, dtype=np.float64)
    if power_spec.shape[1] != fb.weights.shape[1]:
        raise DimensionMismatchError(
            f"spectrogram has {power_spec.shape[1]} bins, filterbank expects "
            f"{fb.weights.shape[1]}"
        )
    return power_spec @ fb.weights.T


def mel_energies(wave: Waveform, cfg: FrontendConfig | None = None) -> np.ndarray:
    """Full frontend: pre-emphasis, framing, FFT power, mel integration."""
    cfg = cfg or FrontendConfig()
    emphasized = pre_emphasize(wave, cfg.preemphasis)
    frames = frame_signal(emphasized, cfg)
    spec = power_spectrum(frames, cfg.fft_size)
    fb = build_mel_filterbank(cfg, wave.sample_rate_hz)
    return apply_filterbank(spec, fb)
