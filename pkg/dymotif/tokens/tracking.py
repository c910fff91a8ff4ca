"""
Token tracking for agent episodes.

Each model call of an episode is one tracked step; steps that issued a tool
call are accounted separately from plain text steps, and per tool.
"""

import logging
from typing import Dict, Optional, Union

from .models import TokenUsage, TokenUsageInfo

logger = logging.getLogger(__name__)


class TokenManager:
    """
    Manages token usage across the steps of an episode.
    """

    def __init__(self, verbose: bool = False):
        """
        Initialize an empty token manager.

        Args:
            verbose: If True, log every tracked step at DEBUG level
        """
        self.steps: Dict[str, Dict] = {}
        self.verbose = verbose

    def add_step(self, step_id: str, usage: TokenUsage,
                 is_tool_related: bool = False, tool_name: Optional[str] = None,
                 parent_step_id: Optional[str] = None):
        """
        Add a step's token usage to the manager.

        Args:
            step_id: Unique ID of the step
            usage: Usage reported for the step's model call
            is_tool_related: Whether the step issued a tool call
            tool_name: Name of the tool if is_tool_related is True
            parent_step_id: ID of the step this one follows
        """
        self.steps[step_id] = {
            "step_id": step_id,
            "usage": usage,
            "is_tool_related": is_tool_related,
            "tool_name": tool_name,
            "parent_step_id": parent_step_id,
        }
        if self.verbose:
            kind = f"tool ({tool_name})" if is_tool_related else "text"
            logger.debug(
                "Step %s [%s]: input=%s output=%s", step_id, kind, usage.input_tokens, usage.output_tokens
            )

    def get_token_usage(self, step_id: Optional[str] = None) -> Union[Dict, TokenUsageInfo]:
        """
        Get token usage for one step or for the whole episode.

        Args:
            step_id: Optional step ID. If None, returns consolidated usage.

        Returns:
            If step_id is provided: the step record (empty if unknown)
            If step_id is None: TokenUsageInfo with text and tool usage
        """
        if step_id:
            return self.steps.get(step_id, {})
        text_usage = TokenUsage()
        tools_usage = TokenUsage()
        by_tool: Dict[str, TokenUsage] = {}
        for step in self.steps.values():
            if step["is_tool_related"]:
                tools_usage = tools_usage + step["usage"]
                if step["tool_name"]:
                    by_tool[step["tool_name"]] = by_tool.get(step["tool_name"], TokenUsage()) + step["usage"]
            else:
                text_usage = text_usage + step["usage"]
        return TokenUsageInfo(text_usage=text_usage, tools_usage=tools_usage, by_tool=by_tool)

    def total(self) -> TokenUsage:
        return self.get_token_usage().total_usage

    def reset(self):
        """Reset all token usage data."""
        self.steps = {}
