"""
Motif tools package for dymotif.
"""
from .callbacks import create_logging_callbacks
from .manager import ToolManager
from .motif_tools import MOTIF_TOOLS, TASK_TOOLS, tool_call_for
from .schema import ToolSpec, validate_tool_input

__all__ = [
    "ToolManager",
    "ToolSpec",
    "MOTIF_TOOLS",
    "TASK_TOOLS",
    "create_logging_callbacks",
    "tool_call_for",
    "validate_tool_input",
]
