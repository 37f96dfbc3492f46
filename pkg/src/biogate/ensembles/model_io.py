"""Versioned model serialization: self-describing JSON, exact float round-trip."""

from __future__ import annotations

import json

import numpy as np

from ..errors import CorruptModel, VersionMismatch
from ..signal_model import ClassLabel
from .boosting import GbtExact, GbtHistogram
from .forest import RandomForest
from .tree import TreeNode

MODEL_FORMAT = "biogate.model"
MODEL_VERSION = 1

ALGORITHMS = {
    "rf": RandomForest,
    "gbt_exact": GbtExact,
    "gbt_hist": GbtHistogram,
}


def make_classifier(algorithm: str, seed: int = 0, **overrides):
    """Instantiate one of the three algorithms by id with default hyperparams."""
    try:
        cls = ALGORITHMS[algorithm]
    except KeyError:
        raise ValueError(
            f"unknown algorithm {algorithm!r}; choose from {sorted(ALGORITHMS)}"
        ) from None
    return cls(seed=seed, **overrides)


def save_model(model, path) -> None:
    if not hasattr(model, "classes_"):
        raise ValueError("cannot save an unfitted model")
    if isinstance(model, RandomForest):
        trees = [t.to_dict() for t in model.trees_]
    else:
        trees = [[t.to_dict() for t in rnd] for rnd in model.rounds_]
    payload = {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "algorithm": model.algorithm,
        "params": model.get_params(),
        "classes": [c.value if isinstance(c, ClassLabel) else c for c in model.classes_],
        "feature_names": list(model.feature_names_) if model.feature_names_ else None,
        "n_features": model.n_features_in_,
        "train_seed": model.train_seed_,
        "feature_importances": model.feature_importances_.tolist(),
        "trees": trees,
    }
    with open(path, "w") as fh:
        json.dump(payload, fh, sort_keys=True)
        fh.write("\n")


def load_model(path):
    try:
        with open(path) as fh:
            payload = json.load(fh)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise CorruptModel(f"{path}: {exc}") from None
    if not isinstance(payload, dict) or payload.get("format") != MODEL_FORMAT:
        raise CorruptModel(f"{path}: not a biogate model file")
    if payload.get("version") != MODEL_VERSION:
        raise VersionMismatch(
            f"{path}: format version {payload.get('version')!r}, supported {MODEL_VERSION}"
        )
    try:
        model = make_classifier(payload["algorithm"], **payload["params"])
        classes = []
        for c in payload["classes"]:
            try:
                classes.append(ClassLabel(c))
            except ValueError:
                classes.append(c)
        model.classes_ = classes
        names = payload["feature_names"]
        model.feature_names_ = None if names is None else tuple(names)
        model.n_features_in_ = payload["n_features"]
        model.train_seed_ = payload["train_seed"]
        model.feature_importances_ = np.asarray(payload["feature_importances"])
        if payload["algorithm"] == "rf":
            model.trees_ = [TreeNode.from_dict(t) for t in payload["trees"]]
        else:
            model.rounds_ = [
                [TreeNode.from_dict(t) for t in rnd] for rnd in payload["trees"]
            ]
    except (KeyError, TypeError) as exc:
        raise CorruptModel(f"{path}: missing or malformed field ({exc})") from None
    return model
