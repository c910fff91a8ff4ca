"""
Routing between the direct LLM path and the tool agent.

Feature extraction and prediction use no LLM tokens, so a routed query costs
exactly what its chosen path costs.
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Tuple

from ..bench.instances import TaskInstance
from ..evaluation.answers import ModelAnswer
from ..evaluation.runner import Solver
from ..evaluation.scoring import score_instance
from .features import FeatureVector, extract_features
from .model import DifficultyModel

logger = logging.getLogger(__name__)

DIRECT = "direct"
AGENT = "agent"


@dataclass(frozen=True)
class RouteDecision:
    """
    Attributes:
        p_hard: Predicted probability that the direct path fails
        route: ``agent`` iff p_hard >= threshold, else ``direct``
    """
    p_hard: float
    route: str


def predict_difficulty(model: DifficultyModel, features: FeatureVector,
                       threshold: Optional[float] = None) -> RouteDecision:
    """
    Predict difficulty and pick a route.

    Args:
        model: Trained difficulty model
        features: Features of the query graph
        threshold: Overrides the model's threshold

    Raises:
        FeatureArityError: If the feature count does not match the model
    """
    theta = model.threshold if threshold is None else threshold
    p_hard = model.predict_proba(features)
    return RouteDecision(p_hard=p_hard, route=AGENT if p_hard >= theta else DIRECT)


@dataclass
class RouteOutcome:
    """
    One routed query: the decision, the answer of the path that ran, and its score.
    """
    instance_id: str
    decision: RouteDecision
    answer: ModelAnswer
    route: str
    score: float
    fallback_used: bool = False

    @property
    def tokens(self) -> Optional[int]:
        return self.answer.usage.total_tokens


def route_and_solve(instance: TaskInstance, model: DifficultyModel, direct: Solver, agent: Solver,
                    threshold: Optional[float] = None, fallback: bool = False) -> RouteOutcome:
    """
    Route one instance and run exactly one path.

    With ``fallback`` set, an endpoint failure on the chosen path is retried
    once on the other path; otherwise the failure is recorded as is.

    Args:
        instance: Query instance
        model: Difficulty model
        direct: Direct-path solver
        agent: Agent-path solver
        threshold: Overrides the model's threshold
        fallback: Try the other path when the chosen one errors
    """
    decision = predict_difficulty(model, extract_features(instance.graph), threshold)
    paths = {DIRECT: direct, AGENT: agent}
    route = decision.route
    answer, _ = paths[route].solve(instance)
    used_fallback = False
    if answer.failed and fallback:
        other = AGENT if route == DIRECT else DIRECT
        logger.warning("Instance %s: %s path failed (%s); falling back to %s", instance.id, route, answer.error, other)
        first_usage = answer.usage
        answer, _ = paths[other].solve(instance)
        answer.usage = first_usage + answer.usage
        route = other
        used_fallback = True
    return RouteOutcome(
        instance_id=instance.id,
        decision=decision,
        answer=answer,
        route=route,
        score=score_instance(instance, answer.parsed).value,
        fallback_used=used_fallback,
    )


class DispatcherSolver(Solver):
    """
    Solver that routes every instance through the difficulty model.
    """
    kind = "dispatcher"

    def __init__(self, model: DifficultyModel, direct: Solver, agent: Solver,
                 threshold: Optional[float] = None, fallback: bool = False):
        self.difficulty_model = model
        self.direct = direct
        self.agent = agent
        self.threshold = model.threshold if threshold is None else threshold
        self.fallback = fallback
        self.model = direct.model

    def solve(self, instance: TaskInstance) -> Tuple[ModelAnswer, Optional[str]]:
        outcome = route_and_solve(instance, self.difficulty_model, self.direct, self.agent,
                                  threshold=self.threshold, fallback=self.fallback)
        return outcome.answer, outcome.route

    def describe(self) -> Dict[str, Any]:
        return {
            **super().describe(),
            "threshold": self.threshold,
            "fallback": self.fallback,
            "direct": self.direct.describe(),
            "agent": self.agent.describe(),
            "difficulty_model": self.difficulty_model.metadata,
        }


@dataclass(frozen=True)
class RouteSummary:
    """
    Trade-off figures of a routing policy over a query set.
    """
    count: int
    accuracy: float
    mean_tokens: Optional[float]
    agent_share: float


def summarize_routes(outcomes: Sequence[RouteOutcome]) -> RouteSummary:
    if not outcomes:
        return RouteSummary(0, 0.0, None, 0.0)
    tokens = [o.tokens for o in outcomes if o.tokens is not None]
    return RouteSummary(
        count=len(outcomes),
        accuracy=sum(o.score for o in outcomes) / len(outcomes),
        mean_tokens=sum(tokens) / len(tokens) if tokens else None,
        agent_share=sum(1 for o in outcomes if o.route == AGENT) / len(outcomes),
    )


def equal_cost_rate(direct_tokens: float, agent_tokens: float, target_tokens: float) -> float:
    """
    Agent share at which random routing spends ``target_tokens`` per query
    on average, clamped to [0, 1].
    """
    if agent_tokens == direct_tokens:
        return 0.0
    rate = (target_tokens - direct_tokens) / (agent_tokens - direct_tokens)
    return min(1.0, max(0.0, rate))


def random_baseline_accuracy(direct_accuracy: float, agent_accuracy: float, rate: float) -> float:
    """Expected accuracy of routing each query to the agent with probability ``rate``."""
    return (1.0 - rate) * direct_accuracy + rate * agent_accuracy
