"""
Token-related data models.

Endpoints do not always report usage, so counts are Optional: None means
unknown, which is different from zero.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional


def _add(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None and b is None:
        return None
    return (a or 0) + (b or 0)


@dataclass(frozen=True)
class TokenUsage:
    """
    Represents token usage of one or more LLM calls.
    """
    input_tokens: Optional[int] = None
    output_tokens: Optional[int] = None

    @property
    def known(self) -> bool:
        return self.input_tokens is not None or self.output_tokens is not None

    @property
    def total_tokens(self) -> Optional[int]:
        """Input plus output tokens, or None when neither is known"""
        return _add(self.input_tokens, self.output_tokens)

    def __add__(self, other: "TokenUsage") -> "TokenUsage":
        return TokenUsage(
            input_tokens=_add(self.input_tokens, other.input_tokens),
            output_tokens=_add(self.output_tokens, other.output_tokens),
        )

    def to_dict(self) -> Dict[str, Optional[int]]:
        return {"input_tokens": self.input_tokens, "output_tokens": self.output_tokens}

    @classmethod
    def from_response(cls, usage: Any, input_field: str, output_field: str) -> "TokenUsage":
        """
        Read counts from an SDK usage object.

        Args:
            usage: Usage object, or None when the endpoint sent none
            input_field: Attribute holding the prompt token count
            output_field: Attribute holding the completion token count
        """
        if usage is None:
            return cls()
        return cls(
            input_tokens=getattr(usage, input_field, None),
            output_tokens=getattr(usage, output_field, None),
        )


@dataclass
class TokenUsageInfo:
    """
    Usage split into plain text turns and tool-calling turns.
    """
    text_usage: TokenUsage
    tools_usage: TokenUsage
    by_tool: Dict[str, TokenUsage] = field(default_factory=dict)

    @property
    def total_usage(self) -> TokenUsage:
        """Get combined total usage across text and tools"""
        return self.text_usage + self.tools_usage
