"""
Tool registry and execution.

Registered tools are shared read-only by every agent episode; ``call_tool``
never raises for bad input and returns an error observation instead.
"""
import inspect
import json
import logging
from typing import Any, Callable, Dict, List, Optional, Tuple

from ..exceptions import DymotifException, ToolInputError
from .motif_tools import MOTIF_TOOLS, ToolHandler
from .schema import ToolSpec, validate_tool_input

logger = logging.getLogger(__name__)


class ToolManager:
    """
    Manages tool registration, schema export, and execution.
    """

    def __init__(self, pre_callback: Optional[Callable] = None, post_callback: Optional[Callable] = None,
                 register_defaults: bool = True):
        """
        Initialize a tool manager.

        Args:
            pre_callback: Called before execution.
                          Must have signature (tool_name: str, tool_input: Dict[str, Any]) -> None
            post_callback: Called after execution; its return value replaces the observation.
                           Must have signature (tool_name: str, tool_input: Dict[str, Any], result: str) -> str
            register_defaults: Register the five motif tools

        Raises:
            ValueError: If a callback has the wrong number of parameters
        """
        self.tools: Dict[str, Tuple[ToolSpec, ToolHandler]] = {}
        self.pre_tool_callback = None
        self.post_tool_callback = None

        if pre_callback:
            params = list(inspect.signature(pre_callback).parameters)
            if len(params) != 2:
                raise ValueError(f"Pre-tool callback must have exactly 2 parameters: (tool_name, tool_input). Got {len(params)} parameters: {params}")
            self.pre_tool_callback = pre_callback

        if post_callback:
            params = list(inspect.signature(post_callback).parameters)
            if len(params) != 3:
                raise ValueError(f"Post-tool callback must have exactly 3 parameters: (tool_name, tool_input, result). Got {len(params)} parameters: {params}")
            self.post_tool_callback = post_callback

        if register_defaults:
            for spec, handler in MOTIF_TOOLS:
                self.register_tool(spec, handler)

    def register_tool(self, spec: ToolSpec, handler: ToolHandler):
        self.tools[spec.name] = (spec, handler)

    @property
    def names(self) -> List[str]:
        return list(self.tools)

    def get_tool_schemas(self) -> List[Dict]:
        """
        Get JSON schemas for all registered tools.
        """
        return [spec.to_schema() for spec, _ in self.tools.values()]

    def describe_tools(self) -> str:
        """Tool list for the agent prompt, one ``name: description`` line each."""
        lines = []
        for spec, _ in self.tools.values():
            lines.append(f"{spec.name}: {spec.description} Parameters: {json.dumps(spec.to_schema()['input_schema'])}")
        return "\n".join(lines)

    def call_tool(self, tool_name: str, tool_input: Any) -> Tuple[str, bool]:
        """
        Execute a tool.

        Args:
            tool_name: Name from the ``Action:`` line
            tool_input: Decoded ``Action Input``

        Returns:
            Tuple of (observation, is_error)
        """
        entry = self.tools.get(tool_name)
        if entry is None:
            return (f"Error: Tool '{tool_name}' not found. Available tools: {', '.join(self.tools)}", True)
        spec, handler = entry

        if self.pre_tool_callback:
            self.pre_tool_callback(tool_name, tool_input)

        try:
            validated = validate_tool_input(spec, tool_input)
            result, is_error = handler(validated["graph"], validated["catalog"]), False
        except ToolInputError as exc:
            result, is_error = f"Error: invalid input at {exc.message}", True
        except DymotifException as exc:
            result, is_error = f"Error: {exc.message}", True
        logger.debug("Tool %s -> %s%s", tool_name, "error " if is_error else "", result[:200])

        if self.post_tool_callback:
            result = self.post_tool_callback(tool_name, tool_input, result)
        return (result, is_error)
