"""Shared estimator plumbing for the three tree-ensemble classifiers."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin

from ..errors import FingerprintMismatch, NonFiniteFeature, SingleClassTraining
from ..signal_model import CLASS_ORDER, ClassLabel


def ordered_classes(y) -> list:
    """Class list in frozen order: biometric classes before NON_BIO.

    Labels outside the four signal classes are allowed (generic problems);
    those sort lexicographically for determinism.
    """
    seen = list(dict.fromkeys(y))
    try:
        members = {ClassLabel(v) for v in seen}
    except ValueError:
        return sorted(seen)
    return [c for c in CLASS_ORDER if c in members]


def softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


class EnsembleClassifierBase(BaseEstimator, ClassifierMixin):
    """fit/predict_proba/predict surface shared by all three algorithms."""

    algorithm: str = ""

    def _validate_training(self, X, y, feature_names):
        X = np.asarray(X, dtype=np.float64)
        if X.ndim != 2:
            raise ValueError("feature matrix must be 2-D")
        if not np.all(np.isfinite(X)):
            raise NonFiniteFeature("training features contain NaN or Inf")
        if len(y) != X.shape[0]:
            raise ValueError("label count does not match row count")
        classes = ordered_classes(y)
        if len(classes) < 2:
            raise SingleClassTraining("need at least two classes to train")
        min_leaf = getattr(self, "min_samples_leaf", 1)
        if X.shape[0] < 2 * min_leaf:
            raise ValueError("need at least 2 * min_samples_leaf training rows")
        lookup = {}
        for idx, c in enumerate(classes):
            lookup[c] = idx
            if isinstance(c, ClassLabel):
                lookup[c.value] = idx
        codes = np.array([lookup[_canonical(v)] for v in y], dtype=np.int64)
        self.classes_ = classes
        self.feature_names_ = None if feature_names is None else tuple(feature_names)
        self.n_features_in_ = X.shape[1]
        return X, codes

    def _validate_scoring(self, X):
        if not hasattr(self, "classes_"):
            raise RuntimeError("model is not fitted")
        X = np.asarray(X, dtype=np.float64)
        if X.ndim == 1:
            X = X[None, :]
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"expected {self.n_features_in_} features, got {X.shape[1]}"
            )
        return X

    def validate_feature_names(self, names) -> None:
        """Raise FingerprintMismatch unless ``names`` matches the training order."""
        if self.feature_names_ is not None and tuple(names) != self.feature_names_:
            raise FingerprintMismatch(
                f"model was trained on {self.feature_names_}, caller supplies {tuple(names)}"
            )

    def predict(self, X):
        proba = self.predict_proba(X)
        picks = np.argmax(proba, axis=1)  # first maximum: earlier class wins ties
        return np.array([self.classes_[i] for i in picks], dtype=object)


def _canonical(v):
    try:
        return ClassLabel(v)
    except (ValueError, TypeError):
        return v
