"""The fail-closed privacy gate: classify a signal, pass only NON_BIO.

The gate is total. Whatever the input (too short, malformed, NaN-bearing,
feature kernel blow-up), ``allowed_to_pass`` is False unless the complete
happy path ran and the predicted class is NON_BIO. Classification errors
never propagate out of :func:`gate_stream` as exceptions, because an
exception that unwound past the gate could leave it open.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .features import DEFAULT_CONFIG, FEATURE_NAMES, FeatureConfig, extract_features
from .signal_model import ClassLabel, Segment

BLOCK_NONE = "NONE"
BLOCK_BIOMETRIC = "BIOMETRIC_CLASS"
BLOCK_TOO_SHORT = "TOO_SHORT"
BLOCK_FEATURE_ERROR = "FEATURE_ERROR"
BLOCK_LOW_CONFIDENCE = "LOW_CONFIDENCE"  # strict mode only


@dataclass(frozen=True)
class FilterConfig:
    """Gate settings. ``strict_threshold`` (off by default) additionally
    requires P(NON_BIO) to reach the threshold before passing."""

    t_star_s: float = 8.0
    strict_threshold: float | None = None

    def __post_init__(self):
        if not (self.t_star_s > 0):
            raise ValueError("t_star_s must be > 0")
        if self.strict_threshold is not None and not (0 <= self.strict_threshold <= 1):
            raise ValueError("strict_threshold must be in [0, 1]")


@dataclass(frozen=True)
class FilterVerdict:
    source_id: str
    predicted_class: ClassLabel | None
    max_probability: float
    allowed_to_pass: bool
    block_reason: str

    def __post_init__(self):
        ok = self.predicted_class == ClassLabel.NON_BIO and self.block_reason == BLOCK_NONE
        if self.allowed_to_pass != ok:
            raise ValueError("verdict violates the pass-iff-NON_BIO invariant")


def _blocked(source_id: str, reason: str, predicted=None, probability=0.0) -> FilterVerdict:
    return FilterVerdict(
        source_id=source_id,
        predicted_class=predicted,
        max_probability=probability,
        allowed_to_pass=False,
        block_reason=reason,
    )


def classify_and_gate(
    signal,
    model,
    config: FilterConfig = FilterConfig(),
    feature_config: FeatureConfig = DEFAULT_CONFIG,
) -> FilterVerdict:
    """Gate one signal. Signals shorter than ``t_star_s`` are blocked without
    classification; longer ones are classified on their leading ``t_star_s``
    window (the duration the models were trained on).

    The decision uses only the maximum-probability class, never an absolute
    threshold, unless strict mode is configured.
    """
    model.validate_feature_names(FEATURE_NAMES)
    source_id = str(getattr(signal, "source_id", "") or "<unnamed>")
    try:
        samples = np.asarray(signal.samples, dtype=np.float64)
        fs = float(signal.sample_rate_hz)
        if samples.ndim != 1 or samples.size == 0 or not fs > 0:
            return _blocked(source_id, BLOCK_FEATURE_ERROR)
        if samples.size / fs < config.t_star_s:
            return _blocked(source_id, BLOCK_TOO_SHORT)
        window = samples[: int(round(config.t_star_s * fs))]
        seg = Segment(
            samples=window,
            sample_rate_hz=fs,
            duration_s=len(window) / fs,
            parent_id=source_id,
        )
        vec = extract_features(seg, feature_config)
        proba = model.predict_proba(vec.values)[0]
        best = 0
        for k in range(1, len(proba)):  # strict >: ties stay with earlier class
            if proba[k] > proba[best]:
                best = k
        predicted = model.classes_[best]
        probability = float(proba[best])
    except Exception:
        return _blocked(source_id, BLOCK_FEATURE_ERROR)
    if predicted != ClassLabel.NON_BIO:
        return _blocked(source_id, BLOCK_BIOMETRIC, predicted, probability)
    if config.strict_threshold is not None and probability < config.strict_threshold:
        return _blocked(source_id, BLOCK_LOW_CONFIDENCE, predicted, probability)
    return FilterVerdict(
        source_id=source_id,
        predicted_class=predicted,
        max_probability=probability,
        allowed_to_pass=True,
        block_reason=BLOCK_NONE,
    )


def gate_stream(signals, model, config: FilterConfig = FilterConfig(),
                feature_config: FeatureConfig = DEFAULT_CONFIG):
    """Gate a sequence independently per item, order preserved.

    Returns (verdicts, passed) where ``passed`` holds the payloads of the
    allowed items only. One bad item never halts the stream: there is one
    verdict per input, no matter what.
    """
    model.validate_feature_names(FEATURE_NAMES)
    verdicts: list[FilterVerdict] = []
    passed = []
    for i, signal in enumerate(signals):
        try:
            verdict = classify_and_gate(signal, model, config, feature_config)
        except Exception:
            sid = str(getattr(signal, "source_id", "") or f"<item {i}>")
            verdict = _blocked(sid, BLOCK_FEATURE_ERROR)
        verdicts.append(verdict)
        if verdict.allowed_to_pass:
            passed.append(signal)
    return verdicts, passed


def write_verdict_csv(path, verdicts) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["source_id", "class", "max_probability", "allowed_to_pass", "block_reason"]
        )
        for v in verdicts:
            writer.writerow(
                [
                    v.source_id,
                    "" if v.predicted_class is None else str(v.predicted_class),
                    repr(v.max_probability),
                    str(v.allowed_to_pass).lower(),
                    v.block_reason,
                ]
            )
