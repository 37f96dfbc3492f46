"""Feature-importance tooling: permutation importance, greedy forward
selection, and the importance-ordered feature/sample ablation grid."""

from __future__ import annotations

import numpy as np

from ..errors import InsufficientSamples
from .model_io import make_classifier


def _seeded_split(n: int, frac: float, seed: int):
    rng = np.random.default_rng((seed, 0xC0FFEE))
    order = rng.permutation(n)
    n_train = max(1, int(np.floor(n * frac + 0.5)))
    return np.sort(order[:n_train]), np.sort(order[n_train:])


def _accuracy(model, X, y) -> float:
    pred = model.predict(X)
    return float(np.mean([p == t for p, t in zip(pred, y)]))


def permutation_importance(model, X, y, n_repeats: int = 10, seed: int = 0) -> np.ndarray:
    """Mean accuracy drop over seeded column shuffles, one value per feature."""
    X = np.asarray(X, dtype=np.float64)
    y = list(y)
    baseline = _accuracy(model, X, y)
    drops = np.zeros(X.shape[1])
    for f in range(X.shape[1]):
        for rep in range(n_repeats):
            rng = np.random.default_rng((seed, f, rep))
            shuffled = X.copy()
            shuffled[:, f] = shuffled[rng.permutation(X.shape[0]), f]
            drops[f] += baseline - _accuracy(model, shuffled, y)
    return drops / n_repeats


def forward_feature_selection(X, y, algorithm: str, seed: int = 0, hyperparams: dict | None = None):
    """Greedy forward selection on an internal seeded 70/30 split.

    At each step the feature whose addition maximizes validation accuracy
    joins the set (ties to the lowest feature index); continues until every
    feature is in. Returns the selection order and the accuracy trace.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=object)
    hyperparams = hyperparams or {}
    train_idx, val_idx = _seeded_split(X.shape[0], 0.7, seed)
    selected: list[int] = []
    trace: list[float] = []
    remaining = list(range(X.shape[1]))
    while remaining:
        best_feature = None
        best_acc = -1.0
        for f in remaining:  # ascending, so strict > keeps the lowest index
            cols = selected + [f]
            model = make_classifier(algorithm, seed=seed, **hyperparams)
            model.fit(X[np.ix_(train_idx, cols)], y[train_idx])
            acc = _accuracy(model, X[np.ix_(val_idx, cols)], y[val_idx])
            if acc > best_acc:
                best_acc = acc
                best_feature = f
        selected.append(best_feature)
        remaining.remove(best_feature)
        trace.append(best_acc)
    return selected, trace


def importance_ordered_ablation(
    X,
    y,
    algorithm: str,
    feature_counts,
    samples_per_class,
    seed: int = 0,
    hyperparams: dict | None = None,
):
    """Accuracy grid over (number of features, training samples per class).

    Features are ranked by the base model's importance and added from the
    least important upward; the selected subset keeps its original column
    order. Training data is stratified-subsampled per class; evaluation
    always uses the full held-out side of the internal 70/30 split.

    Returns ``(grid, feature_order)`` with ``grid[i, j]`` the test accuracy
    at ``feature_counts[i]`` features and ``samples_per_class[j]`` samples.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=object)
    hyperparams = hyperparams or {}
    feature_counts = list(feature_counts)
    samples_per_class = list(samples_per_class)
    if any(c < 1 or c > X.shape[1] for c in feature_counts):
        raise ValueError("feature counts must lie in 1..n_features")

    train_idx, test_idx = _seeded_split(X.shape[0], 0.7, seed)
    base = make_classifier(algorithm, seed=seed, **hyperparams)
    base.fit(X[train_idx], y[train_idx])
    ascending = np.argsort(base.feature_importances_, kind="stable")

    classes = sorted(set(y[train_idx]), key=str)
    per_class_rows = {c: train_idx[y[train_idx] == c] for c in classes}
    grid = np.zeros((len(feature_counts), len(samples_per_class)))
    for j, n_samples in enumerate(samples_per_class):
        short = [str(c) for c in classes if per_class_rows[c].shape[0] < n_samples]
        if short:
            raise InsufficientSamples(
                f"classes {short} have fewer than {n_samples} training rows"
            )
        rows = []
        for ci, c in enumerate(classes):
            pool = per_class_rows[c]
            if n_samples >= pool.shape[0]:
                take = pool  # full class: keep original order for exactness
            else:
                rng = np.random.default_rng((seed, 1, ci, n_samples))
                take = pool[np.sort(rng.permutation(pool.shape[0])[:n_samples])]
            rows.append(take)
        rows = np.sort(np.concatenate(rows))
        for i, n_feats in enumerate(feature_counts):
            cols = np.sort(ascending[:n_feats])
            model = make_classifier(algorithm, seed=seed, **hyperparams)
            model.fit(X[np.ix_(rows, cols)], y[rows])
            grid[i, j] = _accuracy(model, X[np.ix_(test_idx, cols)], y[test_idx])
    return grid, ascending
