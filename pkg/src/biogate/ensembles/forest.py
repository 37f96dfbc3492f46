"""Random forest: bootstrap-sampled CART trees, Gini impurity, sqrt-F
feature candidates per split, probabilities as the mean of leaf class
distributions.

Each tree draws its RNG stream from (seed, tree index), so a parallel
trainer building trees in any order produces the identical forest.
"""

from __future__ import annotations

import numpy as np

from .base import EnsembleClassifierBase
from .tree import TreeNode, build_classification_tree, predict_tree


class RandomForest(EnsembleClassifierBase):
    algorithm = "rf"

    def __init__(
        self,
        n_trees: int = 100,
        max_depth: int = 20,
        min_samples_leaf: int = 1,
        feature_subsample: str | int = "sqrt",
        seed: int = 0,
    ):
        self.n_trees = n_trees
        self.max_depth = max_depth
        self.min_samples_leaf = min_samples_leaf
        self.feature_subsample = feature_subsample
        self.seed = seed

    def _candidates_per_split(self, n_features: int) -> int:
        if self.feature_subsample == "sqrt":
            return max(1, int(round(np.sqrt(n_features))))
        if self.feature_subsample == "all":
            return n_features
        return max(1, min(int(self.feature_subsample), n_features))

    def fit(self, X, y, feature_names=None):
        X, codes = self._validate_training(X, y, feature_names)
        n, n_features = X.shape
        n_classes = len(self.classes_)
        k = self._candidates_per_split(n_features)
        self.trees_: list[TreeNode] = []
        importance = np.zeros(n_features)
        for t in range(self.n_trees):
            rng = np.random.default_rng((self.seed, t))
            rows = rng.integers(0, n, size=n)  # bootstrap, same size as input
            tree, imp = build_classification_tree(
                X[rows], codes[rows], n_classes,
                self.max_depth, self.min_samples_leaf, k, rng,
            )
            self.trees_.append(tree)
            importance += imp
        total = importance.sum()
        self.feature_importances_ = importance / total if total > 0 else importance
        self.train_seed_ = self.seed
        return self

    def predict_proba(self, X):
        X = self._validate_scoring(X)
        n = X.shape[0]
        acc = np.zeros((n, len(self.classes_)))
        buf = np.zeros((n, len(self.classes_)))
        rows = np.arange(n)
        for tree in self.trees_:
            predict_tree(tree, X, buf, rows)
            acc += buf
        return acc / len(self.trees_)
