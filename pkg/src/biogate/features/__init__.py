from .extractor import (
    DEFAULT_CONFIG,
    FEATURE_NAMES,
    N_FEATURES,
    FeatureConfig,
    FeatureExtractor,
    FeatureVector,
    extract_features,
    read_feature_csv,
    write_feature_csv,
)
from .fuzzy import FuzzyEnParams, fuzzy_entropy, fuzzy_entropy_profile
from .welch import PsdEstimate, psd_summary, welch_psd

__all__ = [
    "DEFAULT_CONFIG",
    "FEATURE_NAMES",
    "N_FEATURES",
    "FeatureConfig",
    "FeatureExtractor",
    "FeatureVector",
    "FuzzyEnParams",
    "PsdEstimate",
    "extract_features",
    "fuzzy_entropy",
    "fuzzy_entropy_profile",
    "psd_summary",
    "read_feature_csv",
    "welch_psd",
    "write_feature_csv",
]
