"""
Data models for endpoint responses.
"""
from dataclasses import dataclass, field
from typing import Optional

from ..tokens.models import TokenUsage


@dataclass
class Completion:
    """
    One chat completion.
    """
    text: str = ""
    usage: TokenUsage = field(default_factory=TokenUsage)
    latency_ms: float = 0.0
    model: str = ""
    stop_reason: Optional[str] = None
