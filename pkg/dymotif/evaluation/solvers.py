"""
Solvers for benchmark runs: direct prompting, the tool agent, and random routing.
"""
import logging
from typing import Any, Dict, Optional, Tuple

from ..agent.base import DEFAULT_MAX_STEPS, Agent
from ..api.client import LLMClient
from ..bench.instances import TaskInstance
from ..bench.params import make_rng, stream_tag
from ..exceptions import EndpointError
from .answers import ModelAnswer
from .prompts import Strategy, render_prompt
from .runner import Solver, llm_complete

logger = logging.getLogger(__name__)


class DirectSolver(Solver):
    """
    One prompted completion per instance.
    """
    kind = "direct"

    def __init__(self, client: LLMClient, strategy: Strategy = Strategy.ZERO_SHOT):
        self.client = client
        self.strategy = Strategy(strategy)
        self.model = client.config.model

    def solve(self, instance: TaskInstance) -> Tuple[ModelAnswer, Optional[str]]:
        try:
            answer = llm_complete(render_prompt(instance, self.strategy), self.client, instance.task)
        except EndpointError as exc:
            logger.warning("Instance %s: %s", instance.id, exc.message)
            answer = ModelAnswer.from_error(exc.message)
        return answer, "direct"

    def describe(self) -> Dict[str, Any]:
        return {**super().describe(), "strategy": self.strategy.value}


class AgentSolver(Solver):
    """
    The tool-calling agent.
    """
    kind = "agent"

    def __init__(self, client: LLMClient, max_steps: int = DEFAULT_MAX_STEPS, verbose: bool = False):
        self.agent = Agent(client, max_steps=max_steps, verbose=verbose)
        self.model = client.config.model

    def solve(self, instance: TaskInstance) -> Tuple[ModelAnswer, Optional[str]]:
        answer = self.agent.run(instance)
        if answer.failed:
            logger.warning("Instance %s: %s", instance.id, answer.error)
        return answer, "agent"

    def describe(self) -> Dict[str, Any]:
        return {**super().describe(), "max_steps": self.agent.max_steps}


class RandomRouteSolver(Solver):
    """
    Routes each instance to the agent with probability ``rate``.

    The draw depends only on (seed, instance id), so a rerun routes the same
    way regardless of concurrency.
    """
    kind = "random"

    def __init__(self, direct: Solver, agent: Solver, rate: float = 0.5, seed: int = 0):
        if not 0.0 <= rate <= 1.0:
            raise ValueError(f"rate must lie in [0, 1], got {rate}")
        self.direct = direct
        self.agent = agent
        self.rate = rate
        self.seed = seed
        self.model = direct.model

    def routes_to_agent(self, instance: TaskInstance) -> bool:
        rng = make_rng(self.seed, tag=stream_tag("route", instance.id))
        return bool(rng.random() < self.rate)

    def solve(self, instance: TaskInstance) -> Tuple[ModelAnswer, Optional[str]]:
        solver = self.agent if self.routes_to_agent(instance) else self.direct
        return solver.solve(instance)

    def describe(self) -> Dict[str, Any]:
        return {
            **super().describe(),
            "rate": self.rate,
            "seed": self.seed,
            "direct": self.direct.describe(),
            "agent": self.agent.describe(),
        }
