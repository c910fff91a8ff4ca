"""
Chat-completion clients for the LLM endpoints a run can target.

Both clients decode at the configured temperature (0 by default) and leave
retries with exponential backoff to the SDK (``max_retries``). SDK failures
are re-raised as the typed EndpointError family.
"""
import logging
import time
from contextlib import contextmanager
from typing import Any, Dict, Iterator, List, Optional

import anthropic
import openai

from ..config import EndpointConfig
from ..exceptions import (
    EndpointAuthError,
    EndpointConnectionError,
    EndpointError,
    EndpointQuotaError,
)
from ..tokens.models import TokenUsage
from .models import Completion

logger = logging.getLogger(__name__)

Message = Dict[str, str]


@contextmanager
def _endpoint_errors(sdk: Any) -> Iterator[None]:
    """Map one SDK's exception classes onto EndpointError subclasses."""
    try:
        yield
    except sdk.APIConnectionError as exc:
        raise EndpointConnectionError(f"Endpoint unreachable: {exc}") from exc
    except (sdk.AuthenticationError, sdk.PermissionDeniedError) as exc:
        raise EndpointAuthError(f"Endpoint rejected the credential: {exc}",
                                status_code=getattr(exc, "status_code", None)) from exc
    except sdk.RateLimitError as exc:
        raise EndpointQuotaError(f"Endpoint quota or rate limit hit: {exc}",
                                 status_code=getattr(exc, "status_code", None)) from exc
    except sdk.APIStatusError as exc:
        raise EndpointError(f"Endpoint returned an error: {exc}", status_code=exc.status_code) from exc


class LLMClient:
    """
    Base class of endpoint clients.

    Subclasses implement ``_create``; ``complete`` adds timing and logging.
    """

    def __init__(self, config: EndpointConfig, verbose: bool = False):
        self.config = config
        self.verbose = verbose

    def complete(self, system: str, messages: List[Message]) -> Completion:
        """
        Request one completion.

        Args:
            system: System prompt
            messages: Conversation as ``{"role", "content"}`` dicts

        Returns:
            The Completion

        Raises:
            EndpointError: On transport, credential or quota failures
        """
        if self.verbose:
            logger.debug(
                "Request to %s (%s): %d messages, last %r",
                self.config.model, self.config.provider, len(messages),
                messages[-1]["content"][:200] if messages else "",
            )
        start = time.perf_counter()
        completion = self._create(system, messages)
        completion.latency_ms = (time.perf_counter() - start) * 1000.0
        if self.verbose:
            logger.debug(
                "Response: stop=%s usage=%s text=%r",
                completion.stop_reason, completion.usage.to_dict(), completion.text[:200],
            )
        return completion

    def _create(self, system: str, messages: List[Message]) -> Completion:
        raise NotImplementedError


class AnthropicClient(LLMClient):
    """
    Client for the Anthropic Messages API.
    """

    def __init__(self, config: EndpointConfig, verbose: bool = False, client: Optional[Any] = None):
        super().__init__(config, verbose)
        self.client = client or anthropic.Anthropic(
            api_key=config.resolve_api_key(),
            base_url=config.base_url,
            max_retries=config.max_retries,
            timeout=config.timeout,
        )

    def _create(self, system: str, messages: List[Message]) -> Completion:
        api_params = {
            "model": self.config.model,
            "max_tokens": self.config.max_tokens,
            "temperature": self.config.temperature,
            "messages": messages,
        }
        if system:
            api_params["system"] = system
        with _endpoint_errors(anthropic):
            response = self.client.messages.create(**api_params)
        text = "".join(block.text for block in response.content if getattr(block, "type", "") == "text")
        return Completion(
            text=text,
            usage=TokenUsage.from_response(getattr(response, "usage", None), "input_tokens", "output_tokens"),
            model=getattr(response, "model", self.config.model),
            stop_reason=getattr(response, "stop_reason", None),
        )


class OpenAIClient(LLMClient):
    """
    Client for OpenAI-compatible chat completion servers.
    """

    def __init__(self, config: EndpointConfig, verbose: bool = False, client: Optional[Any] = None):
        super().__init__(config, verbose)
        self.client = client or openai.OpenAI(
            api_key=config.resolve_api_key(),
            base_url=config.base_url,
            max_retries=config.max_retries,
            timeout=config.timeout,
        )

    def _create(self, system: str, messages: List[Message]) -> Completion:
        chat = ([{"role": "system", "content": system}] if system else []) + list(messages)
        with _endpoint_errors(openai):
            response = self.client.chat.completions.create(
                model=self.config.model,
                messages=chat,
                temperature=self.config.temperature,
                max_tokens=self.config.max_tokens,
            )
        choice = response.choices[0] if response.choices else None
        return Completion(
            text=(choice.message.content or "") if choice else "",
            usage=TokenUsage.from_response(getattr(response, "usage", None), "prompt_tokens", "completion_tokens"),
            model=getattr(response, "model", self.config.model),
            stop_reason=getattr(choice, "finish_reason", None),
        )


def create_client(config: EndpointConfig, verbose: bool = False) -> LLMClient:
    """
    Build the client for an endpoint configuration.

    Raises:
        EndpointAuthError: If the credential variable is unset
    """
    if config.provider == "openai":
        return OpenAIClient(config, verbose=verbose)
    return AnthropicClient(config, verbose=verbose)
