"""
Token tracking package for dymotif.
"""
from .models import TokenUsage, TokenUsageInfo
from .tracking import TokenManager

__all__ = [
    "TokenUsage",
    "TokenUsageInfo",
    "TokenManager",
]
