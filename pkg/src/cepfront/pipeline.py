"""End-to-end feature pipelines and the cepstral transform.

Five variants share the mel frontend and differ in normalization and
compression:

  mfcc    mel energies -> log -> DCT
  pncc    mel energies -> medium-time gains -> mean power norm
          -> power law -> DCT
  spncc   pncc without the medium-time stage
  cpncc   mel energies -> mean power norm -> per-channel norm -> DCT
  scpncc  mel energies -> per-channel norm -> DCT
"""

from __future__ import annotations

import hashlib
from dataclasses import asdict, dataclass, field
from functools import lru_cache

import numpy as np

from .audio import Waveform
from .energy import (
    MeanPowerConfig,
    PcenConfig,
    log_compress,
    mean_power_normalize,
    pcen,
    power_law,
)
from .errors import InvalidParameterError
from .medium_time import MediumTimeConfig, medium_time_transfer, time_frequency_normalize
from .spectral import FrontendConfig, mel_energies

FEATURE_TYPES = ("mfcc", "pncc", "spncc", "cpncc", "scpncc")

# stage list per feature type, after the shared mel frontend
FEATURE_STAGES = {
    "mfcc": ("log", "dct"),
    "pncc": ("medium_time", "mean_power", "power_law", "dct"),
    "spncc": ("mean_power", "power_law", "dct"),
    "cpncc": ("mean_power", "pcen", "dct"),
    "scpncc": ("pcen", "dct"),
}


@dataclass(frozen=True)
class PipelineConfig:
    """Everything needed to turn a waveform into a feature matrix."""

    frontend: FrontendConfig = field(default_factory=FrontendConfig)
    medium_time: MediumTimeConfig = field(default_factory=MediumTimeConfig)
    mean_power: MeanPowerConfig = field(default_factory=MeanPowerConfig)
    pcen: PcenConfig = field(default_factory=PcenConfig)
    num_ceps: int = 30
    power_exponent: float = 1.0 / 15.0
    apply_dct: bool = True

    def __post_init__(self):
        if not 1 <= self.num_ceps <= self.frontend.num_filters:
            raise InvalidParameterError(
                f"num_ceps must lie in [1, {self.frontend.num_filters}]"
            )
        if self.power_exponent <= 0.0:
            raise InvalidParameterError("power_exponent must be positive")


@dataclass
class FeatureMatrix:
    """Extracted features: frames x coefficients, tagged with provenance."""

    values: np.ndarray
    feature_type: str
    fingerprint: int

    @property
    def num_frames(self) -> int:
        return self.values.shape[0]

    @property
    def num_coeffs(self) -> int:
        return self.values.shape[1]


def _flatten(tree: dict, prefix: str = "") -> dict:
    flat = {}
    for key, value in tree.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, name + "."))
        else:
            flat[name] = value
    return flat


def config_fingerprint(cfg: PipelineConfig) -> int:
    """Stable 64-bit digest of every config field, nested fields included."""
    items = sorted(_flatten(asdict(cfg)).items())
    blob = ";".join(f"{key}={value!r}" for key, value in items).encode()
    return int.from_bytes(hashlib.sha256(blob).digest()[:8], "little")


@lru_cache(maxsize=8)
def _dct_basis(size: int) -> np.ndarray:
    # orthonormal type-II basis: rows are basis vectors
    n = np.arange(size)[:, np.newaxis]
    k = np.arange(size)[np.newaxis, :]
    basis = np.cos(np.pi * n * (2 * k + 1) / (2 * size))
    basis[0] *= np.sqrt(1.0 / size)
    basis[1:] *= np.sqrt(2.0 / size)
    basis.setflags(write=False)
    return basis


def dct_ii(matrix: np.ndarray, num_ceps: int) -> np.ndarray:
    """Orthonormal type-II DCT per row, truncated to num_ceps coefficients."""
    matrix = np.atleast_2d(np.asarray(matrix, dtype=np.float64))
    size = matrix.shape[1]
    if not 1 <= num_ceps <= size:
        raise InvalidParameterError(f"num_ceps must lie in [1, {size}]")
    return matrix @ _dct_basis(size)[:num_ceps].T


def extract(
    wave: Waveform, feature_type: str, cfg: PipelineConfig | None = None
) -> FeatureMatrix:
    """Run one of the five feature pipelines on a waveform."""
    if feature_type not in FEATURE_STAGES:
        raise InvalidParameterError(
            f"feature_type must be one of {FEATURE_TYPES}, got {feature_type!r}"
        )
    cfg = cfg or PipelineConfig()
    energies = mel_energies(wave, cfg.frontend)

    if feature_type == "mfcc":
        compressed = log_compress(energies)
    elif feature_type == "pncc":
        transfer = medium_time_transfer(energies, cfg.medium_time)
        normalized = time_frequency_normalize(energies, transfer)
        normalized = mean_power_normalize(normalized, cfg.mean_power)
        compressed = power_law(normalized, cfg.power_exponent)
    elif feature_type == "spncc":
        normalized = mean_power_normalize(energies, cfg.mean_power)
        compressed = power_law(normalized, cfg.power_exponent)
    elif feature_type == "cpncc":
        normalized = mean_power_normalize(energies, cfg.mean_power)
        compressed = pcen(normalized, cfg.pcen)
    else:  # scpncc
        compressed = pcen(energies, cfg.pcen)

    values = dct_ii(compressed, cfg.num_ceps) if cfg.apply_dct else compressed
    return FeatureMatrix(
        values=values, feature_type=feature_type, fingerprint=config_fingerprint(cfg)
    )
