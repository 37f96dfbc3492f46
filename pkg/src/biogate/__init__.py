"""biogate: keep biometric signals from leaking out of immersive devices.

Segments raw 1-D signals, extracts a 12-dimensional fuzzy-entropy/PSD
feature vector, classifies ECG / EEG / body movement / non-biometric with
from-scratch tree ensembles, and gates passage through a fail-closed filter
that only lets non-biometric signals through. Includes the full
distortion-robustness evaluation harness and a CLI (``biogate --help``).
"""

from .errors import BiogateError
from .features import (
    FEATURE_NAMES,
    FeatureConfig,
    FeatureExtractor,
    FeatureVector,
    FuzzyEnParams,
    extract_features,
    fuzzy_entropy,
    fuzzy_entropy_profile,
    welch_psd,
)
from .privacy_filter import FilterConfig, FilterVerdict, classify_and_gate, gate_stream
from .signal_model import CLASS_ORDER, ClassLabel, Segment, Signal, resample, segment

__version__ = "0.1.0"

__all__ = [
    "BiogateError",
    "CLASS_ORDER",
    "ClassLabel",
    "FEATURE_NAMES",
    "FeatureConfig",
    "FeatureExtractor",
    "FeatureVector",
    "FilterConfig",
    "FilterVerdict",
    "FuzzyEnParams",
    "Segment",
    "Signal",
    "classify_and_gate",
    "extract_features",
    "fuzzy_entropy",
    "fuzzy_entropy_profile",
    "gate_stream",
    "resample",
    "segment",
    "welch_psd",
    "__version__",
]
