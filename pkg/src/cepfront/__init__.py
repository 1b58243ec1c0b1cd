"""Robust cepstral front-ends with speaker-verification scoring.

Five feature extractors over a shared mel-spectral frontend (mfcc, pncc,
spncc, cpncc, scpncc), a scikit-learn style transformer wrapping them,
DET/EER/minDCF metrics for score files, and a batch CLI.
"""

from .audio import Waveform, load_wav, synth_tone, write_wav
from .energy import (
    MeanPowerConfig,
    PcenConfig,
    ar_smooth,
    log_compress,
    mean_power_normalize,
    mean_power_series,
    pcen,
    pcen_compress,
    power_law,
)
from .errors import (
    DegenerateFilterError,
    DimensionMismatchError,
    FileFormatError,
    InputTooShortError,
    InvalidParameterError,
    MissingClassError,
    SampleRateMismatchError,
    UnsupportedEncodingError,
)
from .estimators import CepstralFeatures
from .medium_time import (
    MediumTimeConfig,
    asymmetric_lowpass,
    medium_time_power,
    medium_time_transfer,
    noise_suppress_and_mask,
    temporal_mask,
    time_frequency_normalize,
    weight_smoothing,
)
from .metrics import DetCurve, det_curve, eer, min_dcf
from .pipeline import (
    FEATURE_STAGES,
    FEATURE_TYPES,
    FeatureMatrix,
    PipelineConfig,
    config_fingerprint,
    dct_ii,
    extract,
)
from .spectral import (
    Filterbank,
    FrontendConfig,
    apply_filterbank,
    build_mel_filterbank,
    frame_signal,
    hz_to_mel,
    mel_energies,
    mel_to_hz,
    power_spectrum,
    pre_emphasize,
)
from .validation import check_feature_type, check_waveform

__version__ = "0.1.0"

__all__ = [
    "CepstralFeatures",
    "DegenerateFilterError",
    "DetCurve",
    "DimensionMismatchError",
    "FEATURE_STAGES",
    "FEATURE_TYPES",
    "FeatureMatrix",
    "FileFormatError",
    "Filterbank",
    "FrontendConfig",
    "InputTooShortError",
    "InvalidParameterError",
    "MeanPowerConfig",
    "MediumTimeConfig",
    "MissingClassError",
    "PcenConfig",
    "PipelineConfig",
    "SampleRateMismatchError",
    "UnsupportedEncodingError",
    "Waveform",
    "apply_filterbank",
    "ar_smooth",
    "asymmetric_lowpass",
    "build_mel_filterbank",
    "check_feature_type",
    "check_waveform",
    "config_fingerprint",
    "dct_ii",
    "det_curve",
    "eer",
    "extract",
    "frame_signal",
    "hz_to_mel",
    "load_wav",
    "log_compress",
    "mean_power_normalize",
    "mean_power_series",
    "medium_time_power",
    "medium_time_transfer",
    "mel_energies",
    "mel_to_hz",
    "min_dcf",
    "noise_suppress_and_mask",
    "pcen",
    "pcen_compress",
    "power_law",
    "power_spectrum",
    "pre_emphasize",
    "synth_tone",
    "temporal_mask",
    "time_frequency_normalize",
    "weight_smoothing",
    "write_wav",
]
