"""
Tool callback functionality.
"""
import logging
from typing import Any, Callable, Dict

# Type definitions for callbacks
PreToolCallbackType = Callable[[str, Dict[str, Any]], None]
PostToolCallbackType = Callable[[str, Dict[str, Any], str], str]

logger = logging.getLogger(__name__)


def create_logging_callbacks(log_prefix: str = "Tool", level: int = logging.INFO):
    """
    Create callbacks that log tool execution.

    Args:
        log_prefix: Prefix for log messages
        level: Logging level of the messages

    Returns:
        Dictionary of callbacks: {"pre_tool": pre_tool_callback, "post_tool": post_tool_callback}
    """
    def pre_tool_callback(tool_name: str, tool_input: Dict[str, Any]) -> None:
        logger.log(level, "%s executing: %s", log_prefix, tool_name)
        logger.log(level, "%s input: %.300s", log_prefix, tool_input)

    def post_tool_callback(tool_name: str, tool_input: Dict[str, Any], result: str) -> str:
        logger.log(level, "%s result: %s", log_prefix, result)
        return result

    return {
        "pre_tool": pre_tool_callback,
        "post_tool": post_tool_callback,
    }
