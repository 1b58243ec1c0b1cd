"""WAV file I/O and deterministic test-signal synthesis.

Only mono 16 kHz RIFF/WAVE files are accepted, in the two encodings that
cover the corpora this library targets: 16-bit integer PCM (format tag 1)
and 32-bit IEEE float (format tag 3). Files at other rates are rejected
rather than silently resampled.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    InvalidParameterError,
    SampleRateMismatchError,
    UnsupportedEncodingError,
)

EXPECTED_SAMPLE_RATE = 16_000

_FORMAT_PCM = 1
_FORMAT_IEEE_FLOAT = 3
# int16 full scale; dividing by 32768 maps [-32768, 32767] into [-1, 1)
_INT16_SCALE = 32768.0


@dataclass
class Waveform:
    """Mono waveform: float64 samples plus their sample rate in Hz."""

    samples: np.ndarray
    sample_rate_hz: int

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=np.float64)
        if self.samples.ndim != 1:
            raise InvalidParameterError("waveform samples must be 1-D")
        if self.samples.size == 0:
            raise InvalidParameterError("waveform must contain at least one sample")
        if self.sample_rate_hz <= 0:
            raise InvalidParameterError("sample rate must be positive")

    def __len__(self) -> int:
        return self.samples.size

    @property
    def duration_s(self) -> float:
        return self.samples.size / self.sample_rate_hz


def load_wav(path) -> Waveform:
    """Read a mono 16 kHz WAV file into a normalized waveform.

    16-bit PCM samples are scaled by 1/32768 so they land in [-1, 1);
    32-bit float samples are passed through with a clamp into the same
    range. Raises FileNotFoundError for a missing file,
    UnsupportedEncodingError for anything that is not mono 16-bit PCM or
    mono 32-bit float, and SampleRateMismatchError for rates other than
    16 kHz.
    """
    data = Path(path).read_bytes()
    if len(data) < 12 or data[:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise UnsupportedEncodingError(f"{path}: not a RIFF/WAVE file")

    fmt = None
    payload = None
    pos = 12
    while pos + 8 <= len(data):
        chunk_id = data[pos : pos + 4]
        (size,) = struct.unpack_from("<I", data, pos + 4)
        body = data[pos + 8 : pos + 8 + size]
        if len(body) < size:
            raise UnsupportedEncodingError(f"{path}: truncated chunk {chunk_id!r}")
        if chunk_id == b"fmt ":
            fmt = body
        elif chunk_id == b"data":
            payload = body
        pos += 8 + size + (size & 1)  # chunks are word-aligned

    if fmt is None or payload is None:
        raise UnsupportedEncodingError(f"{path}: missing fmt or data chunk")
    if len(fmt) < 16:
        raise UnsupportedEncodingError(f"{path}: malformed fmt chunk")
    format_tag, channels, sample_rate, _, _, bits = struct.unpack_from("<HHIIHH", fmt)

    if channels != 1:
        raise UnsupportedEncodingError(f"{path}: expected mono, got {channels} channels")
    if format_tag == _FORMAT_PCM and bits == 16:
        samples = np.frombuffer(payload, dtype="<i2").astype(np.float64) / _INT16_SCALE
    elif format_tag == _FORMAT_IEEE_FLOAT and bits == 32:
        samples = np.frombuffer(payload, dtype="<f4").astype(np.float64)
        samples = np.clip(samples, -1.0, np.nextafter(1.0, 0.0))
    else:
        raise UnsupportedEncodingError(
            f"{path}: unsupported encoding (format tag {format_tag}, {bits} bits)"
        )
    if sample_rate != EXPECTED_SAMPLE_RATE:
        raise SampleRateMismatchError(
            f"{path}: sample rate {sample_rate} Hz, expected {EXPECTED_SAMPLE_RATE} Hz"
        )
    return Waveform(samples=samples, sample_rate_hz=sample_rate)


def write_wav(path, wave: Waveform) -> None:
    """Write a waveform as mono 16-bit PCM (values clipped to full scale)."""
    quantized = np.clip(np.rint(wave.samples * _INT16_SCALE), -32768, 32767)
    payload = quantized.astype("<i2").tobytes()
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF",
        36 + len(payload),
        b"WAVE",
        b"fmt ",
        16,
        _FORMAT_PCM,
        1,
        wave.sample_rate_hz,
        wave.sample_rate_hz * 2,
        2,
        16,
        b"data",
        len(payload),
    )
    Path(path).write_bytes(header + payload)


def synth_tone(
    freq_hz: float,
    duration_s: float,
    sample_rate_hz: int = EXPECTED_SAMPLE_RATE,
    amplitude: float = 0.5,
) -> Waveform:
    """Generate amplitude * sin(2*pi*freq*n/rate) for round(duration*rate) samples."""
    if sample_rate_hz <= 0:
        raise InvalidParameterError("sample rate must be positive")
    if not 0.0 < freq_hz < sample_rate_hz / 2.0:
        raise InvalidParameterError(
            f"tone frequency must lie in (0, {sample_rate_hz / 2}) Hz, got {freq_hz}"
        )
    if not 0.0 < amplitude <= 0.999:
        raise InvalidParameterError("amplitude must lie in (0, 0.999]")
    if duration_s <= 0.0:
        raise InvalidParameterError("duration must be positive")
    num_samples = round(duration_s * sample_rate_hz)
    if num_samples < 1:
        raise InvalidParameterError("duration too short for one sample")
    n = np.arange(num_samples)
    samples = amplitude * np.sin(2.0 * math.pi * freq_hz * n / sample_rate_hz)
    return Waveform(samples=samples, sample_rate_hz=sample_rate_hz)
