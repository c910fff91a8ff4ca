"""
Second-order gradient boosting of regression trees for binary logistic loss.

Trees are grown depth-first with exact greedy splits: every split between two
distinct sorted feature values is scored by

    gain = 1/2 [G_L^2 / (H_L + lambda) + G_R^2 / (H_R + lambda) - G^2 / (H + lambda)] - gamma

and leaves take the weight -G / (H + lambda). Ties are broken by the first
feature and the first position, so training is deterministic.
"""
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Optional

import numpy as np

# Margins are clipped so that probabilities stay strictly inside (0, 1)
MARGIN_CLIP = 30.0

TreeNode = Dict[str, Any]


@dataclass(frozen=True)
class BoostingParams:
    """
    Hyperparameters of the boosted-tree learner.
    """
    n_estimators: int = 100
    max_depth: int = 3
    learning_rate: float = 0.3
    reg_lambda: float = 1.0
    min_child_weight: float = 1.0
    gamma: float = 0.0
    test_fraction: float = 0.2
    seed: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BoostingParams":
        known = {key: data[key] for key in cls.__dataclass_fields__ if key in data}
        return cls(**known)


def sigmoid(margin: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-np.clip(margin, -MARGIN_CLIP, MARGIN_CLIP)))


def _best_split(X: np.ndarray, g: np.ndarray, h: np.ndarray, params: BoostingParams) -> Optional[tuple]:
    G, H = g.sum(), h.sum()
    parent = G * G / (H + params.reg_lambda)
    best = None
    for feature in range(X.shape[1]):
        order = np.argsort(X[:, feature], kind="mergesort")
        xs = X[order, feature]
        gl = np.cumsum(g[order])[:-1]
        hl = np.cumsum(h[order])[:-1]
        gr, hr = G - gl, H - hl
        ok = (xs[:-1] < xs[1:]) & (hl >= params.min_child_weight) & (hr >= params.min_child_weight)
        if not ok.any():
            continue
        gain = 0.5 * (gl * gl / (hl + params.reg_lambda) + gr * gr / (hr + params.reg_lambda) - parent) - params.gamma
        gain = np.where(ok, gain, -np.inf)
        i = int(np.argmax(gain))
        if best is None or gain[i] > best[0]:
            best = (float(gain[i]), feature, float((xs[i] + xs[i + 1]) / 2.0))
    return best


def build_tree(X: np.ndarray, g: np.ndarray, h: np.ndarray, params: BoostingParams, depth: int = 0) -> TreeNode:
    """
    Grow one regression tree on gradients and hessians.

    Returns:
        ``{"leaf": w}`` or ``{"feature", "threshold", "left", "right"}``;
        rows with ``x[feature] < threshold`` go left
    """
    leaf = {"leaf": float(-g.sum() / (h.sum() + params.reg_lambda))}
    if depth >= params.max_depth or len(g) < 2:
        return leaf
    split = _best_split(X, g, h, params)
    if split is None or split[0] <= 0.0:
        return leaf
    _, feature, threshold = split
    left = X[:, feature] < threshold
    return {
        "feature": feature,
        "threshold": threshold,
        "left": build_tree(X[left], g[left], h[left], params, depth + 1),
        "right": build_tree(X[~left], g[~left], h[~left], params, depth + 1),
    }


def predict_tree(tree: TreeNode, X: np.ndarray) -> np.ndarray:
    out = np.empty(X.shape[0], dtype=float)
    for row in range(X.shape[0]):
        node = tree
        while "leaf" not in node:
            node = node["left"] if X[row, node["feature"]] < node["threshold"] else node["right"]
        out[row] = node["leaf"]
    return out


class GradientBoostedTrees:
    """
    Binary classifier: margin = base_score + learning_rate * sum of tree outputs.
    """

    def __init__(self, params: Optional[BoostingParams] = None):
        self.params = params or BoostingParams()
        self.base_score = 0.0
        self.trees: List[TreeNode] = []

    def fit(self, X: np.ndarray, y: np.ndarray) -> "GradientBoostedTrees":
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=float)
        mean = float(np.clip(y.mean(), 1e-6, 1 - 1e-6))
        self.base_score = float(np.log(mean / (1.0 - mean)))
        margin = np.full(len(y), self.base_score)
        self.trees = []
        for _ in range(self.params.n_estimators):
            p = sigmoid(margin)
            g = p - y
            h = p * (1.0 - p)
            tree = build_tree(X, g, h, self.params)
            self.trees.append(tree)
            margin = margin + self.params.learning_rate * predict_tree(tree, X)
        return self

    def predict_margin(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        margin = np.full(X.shape[0], self.base_score)
        for tree in self.trees:
            margin = margin + self.params.learning_rate * predict_tree(tree, X)
        return margin

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        return sigmoid(self.predict_margin(X))
