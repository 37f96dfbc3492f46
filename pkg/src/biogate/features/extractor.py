"""The 12-feature vector: fuzzy entropy at dimensions 1-10 plus PSD mean/std.

Feature order is a frozen contract. Trained models store the tuple in
:data:`FEATURE_NAMES` as a fingerprint and refuse to score vectors produced
under a different order.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from ..errors import FeatureNotFinite
from .fuzzy import DEFAULT_FUZZINESS, DEFAULT_TOLERANCE_SCALE, fuzzy_entropy_profile
from .welch import psd_summary, welch_psd

FEATURE_NAMES: tuple[str, ...] = tuple(
    [f"fuzzyen_m{m}" for m in range(1, 11)] + ["psd_mean", "psd_std"]
)

N_FEATURES = len(FEATURE_NAMES)


@dataclass(frozen=True)
class FeatureConfig:
    """Knobs of the extractor; defaults reproduce the standard pipeline."""

    m_max: int = 10
    tolerance_scale: float = DEFAULT_TOLERANCE_SCALE
    fuzziness: float = DEFAULT_FUZZINESS
    welch_window_s: float = 1.0
    welch_overlap: float = 0.5


@dataclass(frozen=True)
class FeatureVector:
    """Ordered feature values plus their frozen names."""

    values: np.ndarray
    feature_names: tuple[str, ...] = FEATURE_NAMES

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.shape != (len(self.feature_names),):
            raise ValueError(
                f"expected {len(self.feature_names)} values, got shape {vals.shape}"
            )
        if not np.all(np.isfinite(vals)):
            raise FeatureNotFinite("feature vector contains NaN or Inf")
        object.__setattr__(self, "values", vals)


DEFAULT_CONFIG = FeatureConfig()


def extract_features(segment, config: FeatureConfig = DEFAULT_CONFIG) -> FeatureVector:
    """Feature vector of one segment. Deterministic; aborts on non-finite.

    The segment must have at least ``m_max + 2`` samples and cover at least
    one Welch window.
    """
    x = np.asarray(segment.samples, dtype=np.float64)
    sd = float(x.std())
    r = None if sd == 0.0 else config.tolerance_scale * sd
    fe = fuzzy_entropy_profile(x, m_max=config.m_max, r=r, n=config.fuzziness)
    psd = welch_psd(segment, config.welch_window_s, config.welch_overlap)
    mean_p, std_p = psd_summary(psd)
    values = np.concatenate([fe, [mean_p, std_p]])
    if not np.all(np.isfinite(values)):
        bad = [FEATURE_NAMES[i] for i in np.flatnonzero(~np.isfinite(values))]
        raise FeatureNotFinite(f"non-finite features: {', '.join(bad)}")
    return FeatureVector(values=values)


class FeatureExtractor(BaseEstimator, TransformerMixin):
    """Transformer from segments to the (n, 12) feature matrix.

    Stateless: ``fit`` only marks the instance fitted so the class slots into
    sklearn pipelines.
    """

    def __init__(self, config: FeatureConfig = DEFAULT_CONFIG):
        self.config = config

    def fit(self, X, y=None):
        self.n_features_out_ = N_FEATURES
        return self

    def transform(self, X) -> np.ndarray:
        return np.vstack([extract_features(seg, self.config).values for seg in X])

    def get_feature_names_out(self, input_features=None):
        return np.asarray(FEATURE_NAMES, dtype=object)


def write_feature_csv(path, rows) -> None:
    """Write (source_id, label, FeatureVector) rows, sorted for determinism.

    Rows are ordered by source_id (which embeds the segment offset), giving
    byte-identical files for identical inputs.
    """
    ordered = sorted(rows, key=lambda r: r[0])
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["source_id", "label", *FEATURE_NAMES])
        for source_id, label, vec in ordered:
            label_txt = "" if label is None else str(label)
            writer.writerow([source_id, label_txt] + [repr(float(v)) for v in vec.values])


def read_feature_csv(path):
    """Read a feature CSV back into (source_ids, labels, matrix)."""
    from ..signal_model import ClassLabel

    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header[2:]) != FEATURE_NAMES:
            raise FeatureNotFinite(
                "feature CSV column order does not match the frozen feature names"
            )
        ids, labels, rows = [], [], []
        for row in reader:
            ids.append(row[0])
            labels.append(ClassLabel(row[1]) if row[1] else None)
            rows.append([float(v) for v in row[2:]])
    return ids, labels, np.asarray(rows, dtype=np.float64)
