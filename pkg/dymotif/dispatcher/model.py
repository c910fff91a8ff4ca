"""
The difficulty model: a boosted-tree ensemble over FeatureVector with a
routing threshold, stored as a JSON file.
"""
import json
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..exceptions import FeatureArityError, ModelFileError, SingleClassError
from .boosting import BoostingParams, GradientBoostedTrees, TreeNode, predict_tree, sigmoid
from .features import FEATURE_NAMES, FeatureVector
from .labels import LabeledRow

logger = logging.getLogger(__name__)

MODEL_FORMAT = "dymotif-difficulty-model/1"
DEFAULT_THRESHOLD = 0.5

Features = Union[FeatureVector, Sequence[float]]


@dataclass
class DifficultyModel:
    """
    Attributes:
        trees: Tree nodes (``feature``/``threshold``/``left``/``right`` or ``leaf``)
        base_score: Initial margin (log-odds)
        learning_rate: Shrinkage applied to every tree
        threshold: p_hard at or above which a query routes to the agent
        metadata: Training metadata (motifs, sample count, held-out accuracy, params)
    """
    trees: List[TreeNode]
    base_score: float
    learning_rate: float
    threshold: float = DEFAULT_THRESHOLD
    feature_names: List[str] = field(default_factory=lambda: list(FEATURE_NAMES))
    metadata: Dict[str, Any] = field(default_factory=dict)

    def _row(self, features: Features) -> np.ndarray:
        values = features.as_list() if isinstance(features, FeatureVector) else [float(v) for v in features]
        if len(values) != len(self.feature_names):
            raise FeatureArityError(
                f"Model expects {len(self.feature_names)} features, got {len(values)}"
            )
        return np.asarray([values], dtype=float)

    def predict_proba(self, features: Features) -> float:
        """Probability that the query is hard for the direct path."""
        row = self._row(features)
        margin = self.base_score
        for tree in self.trees:
            margin = margin + self.learning_rate * predict_tree(tree, row)[0]
        return float(sigmoid(np.asarray(margin)))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "format": MODEL_FORMAT,
            "feature_names": self.feature_names,
            "base_score": self.base_score,
            "learning_rate": self.learning_rate,
            "threshold": self.threshold,
            "trees": self.trees,
            "metadata": self.metadata,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DifficultyModel":
        if not isinstance(data, dict) or data.get("format") != MODEL_FORMAT:
            raise ModelFileError(f"Not a {MODEL_FORMAT} model")
        try:
            return cls(
                trees=list(data["trees"]),
                base_score=float(data["base_score"]),
                learning_rate=float(data["learning_rate"]),
                threshold=float(data.get("threshold", DEFAULT_THRESHOLD)),
                feature_names=list(data["feature_names"]),
                metadata=dict(data.get("metadata") or {}),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ModelFileError(f"Malformed model: {exc}") from exc

    def save(self, path: str):
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(self.to_dict(), handle, indent=2)
            handle.write("\n")

    @classmethod
    def load(cls, path: str) -> "DifficultyModel":
        """
        Raises:
            ModelFileError: If the file is unreadable or not a model
        """
        try:
            with open(path, "r", encoding="utf-8") as handle:
                data = json.load(handle)
        except OSError as exc:
            raise ModelFileError(f"Cannot read {path}: {exc.strerror or exc}") from exc
        except json.JSONDecodeError as exc:
            raise ModelFileError(f"{path} is not JSON: {exc.msg}") from exc
        return cls.from_dict(data)


def _split(n: int, params: BoostingParams) -> Tuple[np.ndarray, np.ndarray]:
    order = np.random.default_rng(params.seed).permutation(n)
    n_test = int(round(n * params.test_fraction)) if n >= 5 else 0
    return order[n_test:], order[:n_test]


def train_classifier(rows: Sequence[LabeledRow], params: Optional[BoostingParams] = None,
                     threshold: float = DEFAULT_THRESHOLD) -> DifficultyModel:
    """
    Train the difficulty model.

    A seeded permutation holds out ``test_fraction`` of the rows (none when
    fewer than five) to report accuracy; training is deterministic given
    the seed.

    Args:
        rows: Labeled rows
        params: Learner hyperparameters
        threshold: Routing threshold stored with the model

    Returns:
        DifficultyModel with held-out accuracy in its metadata

    Raises:
        SingleClassError: If the rows, or the training part, hold one class
    """
    params = params or BoostingParams()
    X = np.asarray([row.features.as_list() for row in rows], dtype=float)
    y = np.asarray([row.label for row in rows], dtype=float)
    if len(set(y.tolist())) < 2:
        raise SingleClassError("Training data needs both easy (0) and hard (1) rows")
    train, test = _split(len(rows), params)
    if len(set(y[train].tolist())) < 2:
        raise SingleClassError("The training split holds a single class")

    booster = GradientBoostedTrees(params).fit(X[train], y[train])
    accuracy = None
    if len(test):
        predicted = booster.predict_proba(X[test]) >= 0.5
        accuracy = float(np.mean(predicted == (y[test] >= 0.5)))
    motifs = sorted({row.motif for row in rows if row.motif})
    logger.info("Trained %d trees on %d rows; held-out accuracy %s", len(booster.trees), len(train), accuracy)
    return DifficultyModel(
        trees=booster.trees,
        base_score=booster.base_score,
        learning_rate=params.learning_rate,
        threshold=threshold,
        metadata={
            "motifs": motifs,
            "samples": len(rows),
            "train_samples": int(len(train)),
            "test_samples": int(len(test)),
            "heldout_accuracy": accuracy,
            "params": params.to_dict(),
        },
    )
