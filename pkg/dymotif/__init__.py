from .config import EndpointConfig, RunConfig
from .graph import DynamicGraph, EdgeEvent, Op, parse_graph, serialize_graph
from .motifs import MotifCatalog, MotifPattern, count, detect, first_occurrence
from .bench import GenParams, TaskInstance, TaskKind, generate_dataset
from .evaluation import ModelAnswer, parse_answer, run_benchmark, score_instance
from .agent import Agent, run_agent
from .tools.manager import ToolManager
from .tools.callbacks import create_logging_callbacks
from .tokens.tracking import TokenManager
from .tokens.models import TokenUsage, TokenUsageInfo
from .dispatcher import DifficultyModel, extract_features, predict_difficulty, train_classifier

__all__ = [
    "EndpointConfig",
    "RunConfig",
    "DynamicGraph",
    "EdgeEvent",
    "Op",
    "parse_graph",
    "serialize_graph",
    "MotifCatalog",
    "MotifPattern",
    "count",
    "detect",
    "first_occurrence",
    "GenParams",
    "TaskInstance",
    "TaskKind",
    "generate_dataset",
    "ModelAnswer",
    "parse_answer",
    "run_benchmark",
    "score_instance",
    "Agent",
    "run_agent",
    "ToolManager",
    "create_logging_callbacks",
    "TokenManager",
    "TokenUsage",
    "TokenUsageInfo",
    "DifficultyModel",
    "extract_features",
    "predict_difficulty",
    "train_classifier",
]
