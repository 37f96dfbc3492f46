"""Accuracy, per-class F1, and macro-F1 (unweighted mean over classes)."""

from __future__ import annotations

import csv

import numpy as np


def accuracy(y_true, y_pred) -> float:
    y_true = list(y_true)
    y_pred = list(y_pred)
    if len(y_true) != len(y_pred):
        raise ValueError("length mismatch")
    if not y_true:
        return 0.0
    return sum(t == p for t, p in zip(y_true, y_pred)) / len(y_true)


def per_class_f1(y_true, y_pred, classes) -> dict:
    scores = {}
    for c in classes:
        tp = sum(1 for t, p in zip(y_true, y_pred) if t == c and p == c)
        fp = sum(1 for t, p in zip(y_true, y_pred) if t != c and p == c)
        fn = sum(1 for t, p in zip(y_true, y_pred) if t == c and p != c)
        denom = 2 * tp + fp + fn
        scores[c] = 2 * tp / denom if denom else 0.0
    return scores


def macro_f1(y_true, y_pred, classes) -> float:
    scores = per_class_f1(y_true, y_pred, classes)
    return float(np.mean([scores[c] for c in classes]))


def confusion_matrix(y_true, y_pred, classes) -> np.ndarray:
    index = {c: i for i, c in enumerate(classes)}
    out = np.zeros((len(classes), len(classes)), dtype=np.int64)
    for t, p in zip(y_true, y_pred):
        out[index[t], index[p]] += 1
    return out


def write_metrics_csv(path, y_true, y_pred, classes) -> None:
    """Metric rows: overall accuracy, macro-F1, then one F1 per class."""
    f1s = per_class_f1(y_true, y_pred, classes)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["metric", "value"])
        writer.writerow(["accuracy", repr(accuracy(y_true, y_pred))])
        writer.writerow(["macro_f1", repr(macro_f1(y_true, y_pred, classes))])
        for c in classes:
            writer.writerow([f"f1_{c}", repr(f1s[c])])
