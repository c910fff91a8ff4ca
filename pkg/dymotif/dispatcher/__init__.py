"""
Structure-aware dispatcher: difficulty features, the boosted-tree model, and routing.
"""
from .boosting import BoostingParams, GradientBoostedTrees
from .features import FEATURE_NAMES, FeatureVector, extract_features
from .labels import ID_COLUMNS, LABEL_HEADER, LabeledRow, build_label_dataset, read_label_csv, write_label_csv
from .model import DifficultyModel, train_classifier
from .router import (
    DispatcherSolver,
    RouteDecision,
    RouteOutcome,
    RouteSummary,
    equal_cost_rate,
    predict_difficulty,
    random_baseline_accuracy,
    route_and_solve,
    summarize_routes,
)

__all__ = [
    "BoostingParams",
    "DifficultyModel",
    "DispatcherSolver",
    "FEATURE_NAMES",
    "FeatureVector",
    "GradientBoostedTrees",
    "ID_COLUMNS",
    "LABEL_HEADER",
    "LabeledRow",
    "RouteDecision",
    "RouteOutcome",
    "RouteSummary",
    "build_label_dataset",
    "equal_cost_rate",
    "extract_features",
    "predict_difficulty",
    "random_baseline_accuracy",
    "read_label_csv",
    "route_and_solve",
    "summarize_routes",
    "train_classifier",
    "write_label_csv",
]
