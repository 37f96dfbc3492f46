from .base import EnsembleClassifierBase, ordered_classes, softmax
from .boosting import GbtExact, GbtHistogram
from .forest import RandomForest
from .model_io import ALGORITHMS, load_model, make_classifier, save_model
from .selection import (
    forward_feature_selection,
    importance_ordered_ablation,
    permutation_importance,
)

__all__ = [
    "ALGORITHMS",
    "EnsembleClassifierBase",
    "GbtExact",
    "GbtHistogram",
    "RandomForest",
    "forward_feature_selection",
    "importance_ordered_ablation",
    "load_model",
    "make_classifier",
    "ordered_classes",
    "permutation_importance",
    "save_model",
    "softmax",
]
