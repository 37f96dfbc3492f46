"""Shared decision-tree machinery for the forest and boosting ensembles.

Split selection is deterministic everywhere: features are scanned in
ascending index order and gains compared with a strict inequality, so ties
resolve to the lowest feature index and, within a feature, to the lowest
threshold. Thresholds sit at the midpoint between adjacent distinct sorted
values; samples with ``x <= threshold`` go left.
"""

from __future__ import annotations

import numpy as np


class TreeNode:
    __slots__ = ("feature", "threshold", "left", "right", "value")

    def __init__(self, feature=None, threshold=None, left=None, right=None, value=None):
        self.feature = feature
        self.threshold = threshold
        self.left = left
        self.right = right
        self.value = value

    @property
    def is_leaf(self) -> bool:
        return self.feature is None

    def to_dict(self) -> dict:
        if self.is_leaf:
            v = self.value
            return {"v": v.tolist() if isinstance(v, np.ndarray) else float(v)}
        return {
            "f": int(self.feature),
            "t": float(self.threshold),
            "l": self.left.to_dict(),
            "r": self.right.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TreeNode":
        if "v" in d:
            v = d["v"]
            value = np.asarray(v, dtype=np.float64) if isinstance(v, list) else float(v)
            return cls(value=value)
        return cls(
            feature=d["f"],
            threshold=d["t"],
            left=cls.from_dict(d["l"]),
            right=cls.from_dict(d["r"]),
        )


def _midpoint(lo: float, hi: float) -> float:
    # guard against the midpoint rounding up onto the right value
    mid = 0.5 * (lo + hi)
    return lo if mid >= hi else mid


def predict_tree(node: TreeNode, X: np.ndarray, out: np.ndarray, rows: np.ndarray) -> None:
    """Fill ``out[rows]`` with the leaf values reached by ``X[rows]``."""
    if node.is_leaf:
        out[rows] = node.value
        return
    go_left = X[rows, node.feature] <= node.threshold
    left_rows = rows[go_left]
    right_rows = rows[~go_left]
    if left_rows.size:
        predict_tree(node.left, X, out, left_rows)
    if right_rows.size:
        predict_tree(node.right, X, out, right_rows)


def gini_impurity(counts: np.ndarray) -> float:
    total = counts.sum()
    if total == 0:
        return 0.0
    p = counts / total
    return float(1.0 - np.dot(p, p))


def best_split_gini(values, codes, n_classes, min_samples_leaf):
    """Best Gini split of one feature column.

    Returns (gain, threshold) or None when no admissible boundary improves
    the parent impurity. ``gain`` is the plain impurity decrease of this
    node (not weighted by node size) so candidates within one node are
    comparable.
    """
    n = values.shape[0]
    order = np.argsort(values, kind="stable")
    v = values[order]
    c = codes[order]
    onehot = np.zeros((n, n_classes))
    onehot[np.arange(n), c] = 1.0
    left_counts = np.cumsum(onehot, axis=0)
    total = left_counts[-1]
    parent = gini_impurity(total)

    left_n = np.arange(1, n, dtype=np.float64)
    lc = left_counts[:-1]
    rc = total - lc
    right_n = n - left_n
    gl = 1.0 - np.einsum("ij,ij->i", lc, lc) / (left_n**2)
    gr = 1.0 - np.einsum("ij,ij->i", rc, rc) / (right_n**2)
    weighted = (left_n * gl + right_n * gr) / n
    gain = parent - weighted

    valid = v[1:] > v[:-1]
    msl = min_samples_leaf
    if msl > 1:
        valid &= (left_n >= msl) & (right_n >= msl)
    if not valid.any():
        return None
    gain = np.where(valid, gain, -np.inf)
    best = int(np.argmax(gain))
    if gain[best] <= 0.0:
        return None
    return float(gain[best]), _midpoint(v[best], v[best + 1])


def build_classification_tree(
    X, codes, n_classes, max_depth, min_samples_leaf, n_candidates, rng
) -> tuple[TreeNode, np.ndarray]:
    """Grow a CART classification tree on integer class codes.

    ``n_candidates`` features are drawn per split (without replacement).
    Also returns the per-feature accumulated impurity decrease, weighted by
    the fraction of training rows crossing each split.
    """
    n_total, n_features = X.shape
    importance = np.zeros(n_features)

    def leaf(rows):
        dist = np.bincount(codes[rows], minlength=n_classes).astype(np.float64)
        return TreeNode(value=dist / dist.sum())

    def grow(rows, depth):
        node_codes = codes[rows]
        if (
            depth >= max_depth
            or rows.shape[0] < 2 * min_samples_leaf
            or (node_codes == node_codes[0]).all()
        ):
            return leaf(rows)
        if n_candidates < n_features:
            cand = np.sort(rng.choice(n_features, size=n_candidates, replace=False))
        else:
            cand = np.arange(n_features)
        best = None
        for f in cand:
            found = best_split_gini(X[rows, f], node_codes, n_classes, min_samples_leaf)
            if found is not None and (best is None or found[0] > best[0]):
                best = (found[0], f, found[1])
        if best is None:
            return leaf(rows)
        gain, f, threshold = best
        go_left = X[rows, f] <= threshold
        importance[f] += gain * rows.shape[0] / n_total
        return TreeNode(
            feature=int(f),
            threshold=threshold,
            left=grow(rows[go_left], depth + 1),
            right=grow(rows[~go_left], depth + 1),
        )

    root = grow(np.arange(n_total), 0)
    return root, importance


def best_split_gh(values, grad, hess, reg_lambda, gamma, min_samples_leaf):
    """Best gradient/hessian split of one feature column (boosting objective).

    Gain is ``0.5 * (GL^2/(HL+lam) + GR^2/(HR+lam) - G^2/(H+lam)) - gamma``.
    """
    n = values.shape[0]
    if n < 2:
        return None
    order = np.argsort(values, kind="stable")
    v = values[order]
    cg = np.cumsum(grad[order])
    ch = np.cumsum(hess[order])
    g_tot = cg[-1]
    h_tot = ch[-1]
    gl = cg[:-1]
    hl = ch[:-1]
    gr = g_tot - gl
    hr = h_tot - hl
    gain = 0.5 * (
        gl**2 / (hl + reg_lambda)
        + gr**2 / (hr + reg_lambda)
        - g_tot**2 / (h_tot + reg_lambda)
    ) - gamma

    valid = v[1:] > v[:-1]
    if min_samples_leaf > 1:
        left_n = np.arange(1, n, dtype=np.float64)
        valid &= (left_n >= min_samples_leaf) & ((n - left_n) >= min_samples_leaf)
    if not valid.any():
        return None
    gain = np.where(valid, gain, -np.inf)
    best = int(np.argmax(gain))
    if gain[best] <= 0.0:
        return None
    return float(gain[best]), _midpoint(v[best], v[best + 1])


def build_regression_tree_exact(
    X, grad, hess, max_depth, min_samples_leaf, reg_lambda, gamma
) -> tuple[TreeNode, np.ndarray]:
    """Regression tree on (gradient, hessian) with exact split enumeration."""
    n_total, n_features = X.shape
    importance = np.zeros(n_features)

    def leaf(rows):
        g = grad[rows].sum()
        h = hess[rows].sum()
        return TreeNode(value=-g / (h + reg_lambda))

    def grow(rows, depth):
        if depth >= max_depth or rows.shape[0] < 2 * min_samples_leaf:
            return leaf(rows)
        best = None
        for f in range(n_features):
            found = best_split_gh(
                X[rows, f], grad[rows], hess[rows], reg_lambda, gamma, min_samples_leaf
            )
            if found is not None and (best is None or found[0] > best[0]):
                best = (found[0], f, found[1])
        if best is None:
            return leaf(rows)
        gain, f, threshold = best
        go_left = X[rows, f] <= threshold
        importance[f] += gain
        return TreeNode(
            feature=int(f),
            threshold=threshold,
            left=grow(rows[go_left], depth + 1),
            right=grow(rows[~go_left], depth + 1),
        )

    root = grow(np.arange(n_total), 0)
    return root, importance


class FeatureBinner:
    """Quantile pre-binning for histogram split finding.

    Each feature gets at most ``n_bins`` bins; the stored cut values are
    midpoints between adjacent distinct (sub)quantile values, so a column
    with no more distinct values than bins reproduces the exact-split
    candidate set and trained trees stay portable to raw float inputs.
    """

    def __init__(self, n_bins: int = 255):
        self.n_bins = n_bins
        self.cuts_: list[np.ndarray] = []

    def fit(self, X: np.ndarray) -> "FeatureBinner":
        self.cuts_ = []
        for f in range(X.shape[1]):
            uniq = np.unique(X[:, f])
            if uniq.shape[0] > self.n_bins:
                qs = np.linspace(0, 1, self.n_bins + 1)[1:-1]
                uniq = np.unique(np.quantile(uniq, qs, method="nearest"))
            cuts = np.array(
                [_midpoint(lo, hi) for lo, hi in zip(uniq[:-1], uniq[1:])]
            )
            self.cuts_.append(cuts)
        return self

    def transform(self, X: np.ndarray) -> np.ndarray:
        codes = np.empty(X.shape, dtype=np.int64)
        for f, cuts in enumerate(self.cuts_):
            codes[:, f] = np.searchsorted(cuts, X[:, f], side="left")
        return codes


def best_split_hist(codes, grad, hess, cuts, reg_lambda, gamma, min_samples_leaf):
    """Best split of one pre-binned column; boundaries are bin edges."""
    if cuts.shape[0] == 0:
        return None
    n_bins = cuts.shape[0] + 1
    hg = np.bincount(codes, weights=grad, minlength=n_bins)
    hh = np.bincount(codes, weights=hess, minlength=n_bins)
    hc = np.bincount(codes, minlength=n_bins)
    gl = np.cumsum(hg)[:-1]
    hl = np.cumsum(hh)[:-1]
    cl = np.cumsum(hc)[:-1]
    g_tot = hg.sum()
    h_tot = hh.sum()
    n = codes.shape[0]
    gain = 0.5 * (
        gl**2 / (hl + reg_lambda)
        + (g_tot - gl) ** 2 / (h_tot - hl + reg_lambda)
        - g_tot**2 / (h_tot + reg_lambda)
    ) - gamma
    valid = (cl >= min_samples_leaf) & ((n - cl) >= min_samples_leaf)
    if not valid.any():
        return None
    gain = np.where(valid, gain, -np.inf)
    best = int(np.argmax(gain))
    if gain[best] <= 0.0:
        return None
    return float(gain[best]), float(cuts[best]), best


def build_regression_tree_hist(
    codes, X_cuts, grad, hess, max_depth, min_samples_leaf, reg_lambda, gamma
) -> tuple[TreeNode, np.ndarray]:
    """Regression tree on pre-binned features (histogram split finding)."""
    n_total, n_features = codes.shape
    importance = np.zeros(n_features)

    def leaf(rows):
        g = grad[rows].sum()
        h = hess[rows].sum()
        return TreeNode(value=-g / (h + reg_lambda))

    def grow(rows, depth):
        if depth >= max_depth or rows.shape[0] < 2 * min_samples_leaf:
            return leaf(rows)
        best = None
        for f in range(n_features):
            found = best_split_hist(
                codes[rows, f], grad[rows], hess[rows], X_cuts[f],
                reg_lambda, gamma, min_samples_leaf,
            )
            if found is not None and (best is None or found[0] > best[0]):
                best = (found[0], f, found[1], found[2])
        if best is None:
            return leaf(rows)
        gain, f, threshold, boundary = best
        go_left = codes[rows, f] <= boundary
        importance[f] += gain
        return TreeNode(
            feature=int(f),
            threshold=threshold,
            left=grow(rows[go_left], depth + 1),
            right=grow(rows[~go_left], depth + 1),
        )

    root = grow(np.arange(n_total), 0)
    return root, importance
