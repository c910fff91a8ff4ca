"""
ReAct agent that answers benchmark instances by calling the motif tools.
"""
import logging
from typing import Any, Callable, Dict, List, Optional

from ..api.client import LLMClient
from ..bench.instances import TaskInstance
from ..evaluation.answers import ModelAnswer, ParseFailure, parse_answer
from ..evaluation.prompts import Strategy, render_prompt
from ..exceptions import EndpointError, StepLimitExceededException
from ..tokens.tracking import TokenManager
from ..tools.manager import ToolManager
from .messaging import parse_react_step
from .prompt import RETRY_MESSAGE, agent_system_prompt

logger = logging.getLogger(__name__)

DEFAULT_MAX_STEPS = 5
MAX_PARSE_FAILURES = 2


class AgentParseFailure(Exception):
    """Raised inside an episode after too many unreadable turns."""


class Agent:
    """
    Tool-calling agent over one endpoint.

    The prompt asks for exactly one tool call per question, but an episode
    may take up to ``max_steps`` model turns.
    """

    def __init__(self, client: LLMClient, max_steps: int = DEFAULT_MAX_STEPS,
                 tool_manager: Optional[ToolManager] = None,
                 callbacks: Optional[Dict[str, Callable]] = None,
                 verbose: bool = False):
        """
        Args:
            client: Endpoint client driving the agent
            max_steps: Model turns allowed per episode
            tool_manager: Tool registry; the five motif tools by default
            callbacks: Optional {"pre_tool": ..., "post_tool": ...} callbacks
            verbose: If True, log every step at DEBUG level
        """
        if max_steps < 1:
            raise ValueError(f"max_steps must be at least 1, got {max_steps}")
        self.client = client
        self.max_steps = max_steps
        callbacks = callbacks or {}
        self.tool_manager = tool_manager or ToolManager(
            pre_callback=callbacks.get("pre_tool"), post_callback=callbacks.get("post_tool")
        )
        self.verbose = verbose
        self.system = agent_system_prompt(self.tool_manager.describe_tools())

    def _episode(self, instance: TaskInstance, token_manager: TokenManager,
                 transcript: List[Dict[str, Any]]) -> str:
        """
        Run the loop and return the final answer text.

        Raises:
            StepLimitExceededException: If no final answer came within max_steps
            AgentParseFailure: After MAX_PARSE_FAILURES unreadable turns
            EndpointError: If the endpoint fails
        """
        question = render_prompt(instance, Strategy.ZERO_SHOT).text
        messages = [{"role": "user", "content": question}]
        failures = 0
        last_text = ""
        for index in range(self.max_steps):
            completion = self.client.complete(self.system, messages)
            last_text = completion.text
            step = parse_react_step(completion.text)
            step_id = f"step_{index}"
            token_manager.add_step(
                step_id,
                completion.usage,
                is_tool_related=step.action is not None and not step.is_final,
                tool_name=step.action,
                parent_step_id=f"step_{index - 1}" if index else None,
            )
            entry = {"step": index, "text": completion.text, "latency_ms": completion.latency_ms,
                     "usage": completion.usage.to_dict()}
            transcript.append(entry)
            messages.append({"role": "assistant", "content": completion.text})
            if self.verbose:
                logger.debug("Instance %s step %d: %s", instance.id, index, step.to_dict())

            if step.is_final:
                entry.update(step.to_dict())
                return step.final_answer
            if step.is_failure:
                failures += 1
                entry.update(step.to_dict())
                if failures >= MAX_PARSE_FAILURES:
                    raise AgentParseFailure(step.error)
                messages.append({"role": "user", "content": RETRY_MESSAGE.format(error=step.error)})
                continue

            observation, is_error = self.tool_manager.call_tool(step.action, step.action_input)
            step.observation = observation
            entry.update(step.to_dict())
            entry["is_error"] = is_error
            messages.append({"role": "user", "content": f"Observation: {observation}"})

        raise StepLimitExceededException(response_text=last_text, steps=self.max_steps)

    def run(self, instance: TaskInstance) -> ModelAnswer:
        """
        Answer an instance.

        Budget exhaustion and repeated parse failures give an unresolved
        answer; endpoint failures give an errored answer. Neither raises.
        """
        token_manager = TokenManager(verbose=self.verbose)
        transcript: List[Dict[str, Any]] = []
        try:
            final = self._episode(instance, token_manager, transcript)
        except StepLimitExceededException as exc:
            logger.debug("Instance %s: %s", instance.id, exc.message)
            return self._unresolved(exc.response_text or "", "step budget exhausted", token_manager, transcript)
        except AgentParseFailure as exc:
            logger.debug("Instance %s: unreadable agent output (%s)", instance.id, exc)
            return self._unresolved(transcript[-1]["text"], f"unreadable agent output: {exc}",
                                    token_manager, transcript)
        except EndpointError as exc:
            return ModelAnswer.from_error(exc.message, usage=token_manager.total(),
                                          latency_ms=_latency(transcript), transcript=transcript)
        return ModelAnswer(
            raw_text=transcript[-1]["text"],
            parsed=parse_answer(f"Answer: {final}", instance.task),
            usage=token_manager.total(),
            latency_ms=_latency(transcript),
            transcript=transcript,
        )

    @staticmethod
    def _unresolved(text: str, reason: str, token_manager: TokenManager,
                    transcript: List[Dict[str, Any]]) -> ModelAnswer:
        return ModelAnswer(
            raw_text=text,
            parsed=ParseFailure(reason, text),
            usage=token_manager.total(),
            latency_ms=_latency(transcript),
            unresolved=True,
            transcript=transcript,
        )


def _latency(transcript: List[Dict[str, Any]]) -> float:
    return sum(entry.get("latency_ms", 0.0) for entry in transcript)


def run_agent(instance: TaskInstance, client: LLMClient, max_steps: int = DEFAULT_MAX_STEPS,
              verbose: bool = False) -> ModelAnswer:
    """
    Answer one instance with a fresh agent.

    Args:
        instance: Benchmark instance
        client: Endpoint client driving the agent
        max_steps: Model turns allowed (at least 1)
        verbose: If True, log every step

    Returns:
        ModelAnswer with the transcript and summed token usage
    """
    return Agent(client, max_steps=max_steps, verbose=verbose).run(instance)
