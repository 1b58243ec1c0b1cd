"""On-disk formats: feature files, PGM images, score and config files.

Feature binary layout (all little-endian):

    bytes 0-3    magic "FEAT"
    byte  4      format version (1)
    byte  5      feature-type code (mfcc=0, pncc=1, spncc=2, cpncc=3, scpncc=4)
    bytes 6-9    uint32 frame count T
    bytes 10-13  uint32 coefficient count C
    bytes 14-21  uint64 config fingerprint
    bytes 22-    T*C float32 values, row-major

Score files hold one trial per line, "<label> <score>" with label
"target" or "nontarget"; blank lines and '#' comments are skipped.

Config files are flat "key = value" text with dotted section prefixes,
e.g. "pcen.alpha = 0.5". Unknown keys are errors.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .energy import MeanPowerConfig, PcenConfig
from .errors import FileFormatError
from .medium_time import MediumTimeConfig
from .pipeline import FEATURE_TYPES, FeatureMatrix, PipelineConfig
from .spectral import FrontendConfig

MAGIC = b"FEAT"
FORMAT_VERSION = 1
FEATURE_CODES = {name: code for code, name in enumerate(FEATURE_TYPES)}

_HEADER = struct.Struct("<4sBBIIQ")


def write_feature_file(path, features: FeatureMatrix) -> None:
    """Serialize a feature matrix to the binary format above."""
    values = np.ascontiguousarray(features.values, dtype="<f4")
    header = _HEADER.pack(
        MAGIC,
        FORMAT_VERSION,
        FEATURE_CODES[features.feature_type],
        values.shape[0],
        values.shape[1],
        features.fingerprint,
    )
    Path(path).write_bytes(header + values.tobytes())


def read_feature_file(path) -> FeatureMatrix:
    """Parse a binary feature file; values come back as float32."""
    data = Path(path).read_bytes()
    if len(data) < _HEADER.size:
        raise FileFormatError(f"{path}: shorter than a feature header")
    magic, version, code, frames, coeffs, fingerprint = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise FileFormatError(f"{path}: bad magic {magic!r}")
    if version != FORMAT_VERSION:
        raise FileFormatError(f"{path}: unsupported format version {version}")
    if code >= len(FEATURE_TYPES):
        raise FileFormatError(f"{path}: unknown feature-type code {code}")
    expected = _HEADER.size + 4 * frames * coeffs
    if len(data) != expected:
        raise FileFormatError(f"{path}: expected {expected} bytes, found {len(data)}")
    values = np.frombuffer(data, dtype="<f4", offset=_HEADER.size).reshape(frames, coeffs)
    return FeatureMatrix(
        values=values, feature_type=FEATURE_TYPES[code], fingerprint=fingerprint
    )


def write_feature_csv(path, features: FeatureMatrix) -> None:
    """One frame per line, coefficients comma-separated, full float precision."""
    with open(path, "w", encoding="ascii") as handle:
        for row in np.asarray(features.values, dtype=np.float64):
            handle.write(",".join(repr(float(v)) for v in row) + "\n")


def render_grayscale(values: np.ndarray) -> np.ndarray:
    """Map a frames x channels matrix to an 8-bit image.

    Rows are channels with channel 0 at the bottom, columns are frames;
    values are min-max scaled to 0..255, and a constant matrix renders
    black.
    """
    values = np.asarray(values, dtype=np.float64)
    lo, hi = values.min(), values.max()
    if hi > lo:
        scaled = (values - lo) / (hi - lo) * 255.0
    else:
        scaled = np.zeros_like(values)
    return np.rint(scaled).astype(np.uint8).T[::-1]


def write_pgm(path, image: np.ndarray) -> None:
    """Write an 8-bit grayscale image as binary PGM (P5)."""
    image = np.ascontiguousarray(image, dtype=np.uint8)
    if image.ndim != 2:
        raise FileFormatError("PGM image must be 2-D")
    header = f"P5\n{image.shape[1]} {image.shape[0]}\n255\n".encode("ascii")
    Path(path).write_bytes(header + image.tobytes())


def parse_score_file(path) -> tuple[np.ndarray, np.ndarray]:
    """Read trial labels and scores, reporting the line of any bad entry."""
    labels: list[bool] = []
    scores: list[float] = []
    with open(path, "r", encoding="ascii") as handle:
        for lineno, line in enumerate(handle, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            parts = text.split()
            if len(parts) != 2 or parts[0] not in ("target", "nontarget"):
                raise FileFormatError(
                    f"{path}:{lineno}: expected '<target|nontarget> <score>', got {line.rstrip()!r}"
                )
            try:
                score = float(parts[1])
            except ValueError:
                raise FileFormatError(
                    f"{path}:{lineno}: score {parts[1]!r} is not a number"
                ) from None
            labels.append(parts[0] == "target")
            scores.append(score)
    return np.array(labels, dtype=bool), np.array(scores, dtype=np.float64)


def _parse_bool(text: str) -> bool:
    lowered = text.lower()
    if lowered in ("true", "1", "yes"):
        return True
    if lowered in ("false", "0", "no"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _parse_optional_float(text: str) -> float | None:
    return None if text.lower() in ("none", "auto") else float(text)


def _parse_mu_init(text: str) -> float | None:
    return None if text.lower() == "first_frame_mean" else float(text)


# dotted config key -> (section, field, converter); section None is top level
_CONFIG_KEYS = {
    "frontend.frame_length_ms": ("frontend", "frame_length_ms", float),
    "frontend.hop_ms": ("frontend", "hop_ms", float),
    "frontend.preemphasis": ("frontend", "preemphasis", float),
    "frontend.window": ("frontend", "window", str),
    "frontend.fft_size": ("frontend", "fft_size", int),
    "frontend.num_filters": ("frontend", "num_filters", int),
    "frontend.fmin_hz": ("frontend", "fmin_hz", float),
    "frontend.fmax_hz": ("frontend", "fmax_hz", _parse_optional_float),
    "medium_time.window_halfwidth": ("medium_time", "window_halfwidth", int),
    "medium_time.ans_lambda_a": ("medium_time", "ans_lambda_a", float),
    "medium_time.ans_lambda_b": ("medium_time", "ans_lambda_b", float),
    "medium_time.floor_factor": ("medium_time", "floor_factor", float),
    "medium_time.masking_lambda_t": ("medium_time", "masking_lambda_t", float),
    "medium_time.masking_mu_t": ("medium_time", "masking_mu_t", float),
    "medium_time.smoothing_halfwidth": ("medium_time", "smoothing_halfwidth", int),
    "medium_time.bypass": ("medium_time", "bypass", _parse_bool),
    "mean_power.lambda_mu": ("mean_power", "lambda_mu", float),
    "mean_power.mu_init": ("mean_power", "mu_init", _parse_mu_init),
    "pcen.alpha": ("pcen", "alpha", float),
    "pcen.delta": ("pcen", "delta", float),
    "pcen.r": ("pcen", "r", float),
    "pcen.epsilon": ("pcen", "epsilon", float),
    "pcen.s": ("pcen", "s", _parse_optional_float),
    "num_ceps": (None, "num_ceps", int),
    "power_exponent": (None, "power_exponent", float),
    "apply_dct": (None, "apply_dct", _parse_bool),
}

_SECTION_TYPES = {
    "frontend": FrontendConfig,
    "medium_time": MediumTimeConfig,
    "mean_power": MeanPowerConfig,
    "pcen": PcenConfig,
}


def parse_config_file(path) -> PipelineConfig:
    """Build a PipelineConfig from flat "key = value" text.

    Unknown keys and unparsable values are errors, reported with their
    line number.
    """
    sections: dict = {None: {}, "frontend": {}, "medium_time": {}, "mean_power": {}, "pcen": {}}
    with open(path, "r", encoding="ascii") as handle:
        for lineno, line in enumerate(handle, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            key, sep, raw_value = (part.strip() for part in text.partition("="))
            if not sep or not key:
                raise FileFormatError(f"{path}:{lineno}: expected 'key = value'")
            if key not in _CONFIG_KEYS:
                raise FileFormatError(f"{path}:{lineno}: unknown key {key!r}")
            section, fieldname, convert = _CONFIG_KEYS[key]
            try:
                sections[section][fieldname] = convert(raw_value)
            except ValueError as exc:
                raise FileFormatError(f"{path}:{lineno}: {exc}") from None
    kwargs = dict(sections[None])
    for name, cls in _SECTION_TYPES.items():
        if sections[name]:
            kwargs[name] = cls(**sections[name])
    return PipelineConfig(**kwargs)


__all__ = [
    "FEATURE_CODES",
    "FORMAT_VERSION",
    "MAGIC",
    "parse_config_file",
    "parse_score_file",
    "read_feature_file",
    "render_grayscale",
    "write_feature_csv",
    "write_feature_file",
    "write_pgm",
]
