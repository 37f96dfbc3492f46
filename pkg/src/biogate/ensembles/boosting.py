"""Gradient-boosted trees with a multiclass softmax objective.

Two split-finding variants share everything else: the exact variant
enumerates boundaries between adjacent sorted feature values, the histogram
variant pre-bins features into quantile bins and scans bin edges. Each
boosting round fits one regression tree per class to the negative gradient
(first-order), with hessian-weighted leaf values ``-G / (H + lambda)``.

Base logits start at zero, so a model with zero completed rounds predicts
the uniform distribution.
"""

from __future__ import annotations

import numpy as np

from .base import EnsembleClassifierBase, softmax
from .tree import (
    FeatureBinner,
    TreeNode,
    build_regression_tree_exact,
    build_regression_tree_hist,
    predict_tree,
)


class _GradientBoostingBase(EnsembleClassifierBase):
    def __init__(
        self,
        n_trees: int = 100,
        max_depth: int = 3,
        learning_rate: float = 0.1,
        min_samples_leaf: int = 1,
        reg_lambda: float = 1.0,
        gamma: float = 0.0,
        seed: int = 0,
    ):
        self.n_trees = n_trees
        self.max_depth = max_depth
        self.learning_rate = learning_rate
        self.min_samples_leaf = min_samples_leaf
        self.reg_lambda = reg_lambda
        self.gamma = gamma
        self.seed = seed

    def _fit_round_tree(self, X, grad, hess):
        raise NotImplementedError

    def _prepare(self, X):
        """Hook for the histogram variant to pre-bin the training matrix."""

    def fit(self, X, y, feature_names=None):
        if not (0 < self.learning_rate <= 1):
            raise ValueError("learning_rate must be in (0, 1]")
        X, codes = self._validate_training(X, y, feature_names)
        n, n_features = X.shape
        n_classes = len(self.classes_)
        onehot = np.zeros((n, n_classes))
        onehot[np.arange(n), codes] = 1.0
        self._prepare(X)
        logits = np.zeros((n, n_classes))
        buf = np.zeros(n)
        rows = np.arange(n)
        self.rounds_: list[list[TreeNode]] = []
        importance = np.zeros(n_features)
        for _ in range(self.n_trees):
            proba = softmax(logits)
            round_trees = []
            for k in range(n_classes):
                grad = proba[:, k] - onehot[:, k]
                hess = proba[:, k] * (1.0 - proba[:, k])
                tree, imp = self._fit_round_tree(X, grad, hess)
                predict_tree(tree, X, buf, rows)
                logits[:, k] += self.learning_rate * buf
                importance += imp
                round_trees.append(tree)
            self.rounds_.append(round_trees)
        total = importance.sum()
        self.feature_importances_ = importance / total if total > 0 else importance
        self.train_seed_ = self.seed
        return self

    def decision_function(self, X):
        X = self._validate_scoring(X)
        n = X.shape[0]
        logits = np.zeros((n, len(self.classes_)))
        buf = np.zeros(n)
        rows = np.arange(n)
        for round_trees in getattr(self, "rounds_", []):
            for k, tree in enumerate(round_trees):
                predict_tree(tree, X, buf, rows)
                logits[:, k] += self.learning_rate * buf
        return logits

    def predict_proba(self, X):
        return softmax(self.decision_function(X))


class GbtExact(_GradientBoostingBase):
    algorithm = "gbt_exact"

    def _fit_round_tree(self, X, grad, hess):
        return build_regression_tree_exact(
            X, grad, hess, self.max_depth, self.min_samples_leaf,
            self.reg_lambda, self.gamma,
        )


class GbtHistogram(_GradientBoostingBase):
    algorithm = "gbt_hist"

    def __init__(
        self,
        n_trees: int = 100,
        max_depth: int = 3,
        learning_rate: float = 0.1,
        min_samples_leaf: int = 1,
        reg_lambda: float = 1.0,
        gamma: float = 0.0,
        n_bins: int = 255,
        seed: int = 0,
    ):
        super().__init__(
            n_trees=n_trees,
            max_depth=max_depth,
            learning_rate=learning_rate,
            min_samples_leaf=min_samples_leaf,
            reg_lambda=reg_lambda,
            gamma=gamma,
            seed=seed,
        )
        self.n_bins = n_bins

    def _prepare(self, X):
        self._binner = FeatureBinner(self.n_bins).fit(X)
        self._codes = self._binner.transform(X)

    def _fit_round_tree(self, X, grad, hess):
        return build_regression_tree_hist(
            self._codes, self._binner.cuts_, grad, hess,
            self.max_depth, self.min_samples_leaf, self.reg_lambda, self.gamma,
        )

    def fit(self, X, y, feature_names=None):
        try:
            return super().fit(X, y, feature_names)
        finally:
            # binning scaffolding is training-only; trees hold raw thresholds
            self.__dict__.pop("_binner", None)
            self.__dict__.pop("_codes", None)
