"""
Run configuration built from CLI flags.

Credentials are read from the environment when a client is built and are
never stored on these objects; ``to_dict`` records only the variable name.
"""
import os
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Optional

from .api.constants import (
    API_KEY_ENV,
    DEFAULT_MAX_RETRIES,
    DEFAULT_MAX_TOKENS,
    DEFAULT_MODEL,
    DEFAULT_PROVIDER,
    DEFAULT_TEMPERATURE,
    DEFAULT_TIMEOUT,
    PROVIDERS,
)
from .exceptions import EndpointAuthError, InvalidParamsError

DEFAULT_MAX_STEPS = 5
DEFAULT_THRESHOLD = 0.5


@dataclass
class EndpointConfig:
    """
    Where and how to reach an LLM endpoint.

    Attributes:
        provider: ``anthropic`` or ``openai`` (any OpenAI-compatible server)
        model: Model name
        base_url: Endpoint URL; the SDK default when None
        api_key_env: Environment variable holding the credential
    """
    provider: str = DEFAULT_PROVIDER
    model: str = DEFAULT_MODEL
    base_url: Optional[str] = None
    api_key_env: str = API_KEY_ENV
    max_tokens: int = DEFAULT_MAX_TOKENS
    max_retries: int = DEFAULT_MAX_RETRIES
    timeout: float = DEFAULT_TIMEOUT
    temperature: float = DEFAULT_TEMPERATURE

    def __post_init__(self):
        if self.provider not in PROVIDERS:
            raise InvalidParamsError(f"Unknown provider {self.provider!r}; known: {', '.join(PROVIDERS)}")

    def resolve_api_key(self) -> str:
        """
        Read the credential from the environment.

        Raises:
            EndpointAuthError: If the variable is unset or empty
        """
        key = os.environ.get(self.api_key_env, "")
        if not key:
            raise EndpointAuthError(f"Credential variable {self.api_key_env} is not set")
        return key

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class RunConfig:
    """
    Settings shared by benchmark, agent and dispatcher runs.
    """
    endpoint: EndpointConfig = field(default_factory=EndpointConfig)
    agent_endpoint: Optional[EndpointConfig] = None
    strategy: str = "zero_shot"
    concurrency: int = 1
    seed: Optional[int] = None
    threshold: float = DEFAULT_THRESHOLD
    max_steps: int = DEFAULT_MAX_STEPS
    fallback: bool = False
    random_route_rate: float = 0.5
    instances_path: Optional[str] = None
    out_path: Optional[str] = None
    model_path: Optional[str] = None

    def __post_init__(self):
        if self.concurrency < 1:
            raise InvalidParamsError(f"concurrency must be at least 1, got {self.concurrency}")
        if self.max_steps < 1:
            raise InvalidParamsError(f"max_steps must be at least 1, got {self.max_steps}")
        if not 0.0 <= self.threshold <= 1.0:
            raise InvalidParamsError(f"threshold must lie in [0, 1], got {self.threshold}")
        if not 0.0 <= self.random_route_rate <= 1.0:
            raise InvalidParamsError(f"random_route_rate must lie in [0, 1], got {self.random_route_rate}")

    @property
    def tool_endpoint(self) -> EndpointConfig:
        """Endpoint driving the agent; the direct endpoint unless set apart."""
        return self.agent_endpoint or self.endpoint

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["endpoint"] = self.endpoint.to_dict()
        data["agent_endpoint"] = self.agent_endpoint.to_dict() if self.agent_endpoint else None
        return data
