"""
Tool schemas and input validation for the motif tools.

Every tool takes an ``edge_list`` (a list of 4-element arrays) plus either a
``motif_list`` or ``motif_definitions`` object mapping motif names to
``{"edge_pattern": [...], "time_window": int}``. Validation errors carry the
path of the offending field so an agent can repair its input.
"""
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping

from ..exceptions import DymotifException, ToolInputError
from ..graph import DynamicGraph, EdgeEvent
from ..motifs import MotifCatalog, MotifPattern, motif_from_record

EDGE_LIST_SCHEMA = {
    "type": "array",
    "description": "The dynamic graph as a list of 4-element arrays [u, v, t, op], op is 'a' (add) or 'd' (delete)",
    "items": {
        "type": "array",
        "minItems": 4,
        "maxItems": 4,
        "items": [
            {"type": "integer"},
            {"type": "integer"},
            {"type": "integer"},
            {"type": "string", "enum": ["a", "d"]},
        ],
    },
}

MOTIF_OBJECT_SCHEMA = {
    "type": "object",
    "description": "Maps motif name to a nested object with edge_pattern and time_window",
    "additionalProperties": {
        "type": "object",
        "properties": {
            "edge_pattern": {
                "type": "array",
                "description": "Pattern edges as [u0, u1, t0, 'a'] arrays in temporal order",
                "items": {"type": "array"},
            },
            "time_window": {"type": "integer", "minimum": 0},
        },
        "required": ["edge_pattern", "time_window"],
    },
}


@dataclass(frozen=True)
class ToolSpec:
    """
    Name, description and parameter schema of one tool.

    Attributes:
        name: Tool name used in ``Action:`` lines
        description: Text shown to the model
        motif_param: ``motif_list`` or ``motif_definitions``
        single_motif: Whether the motif object must hold exactly one motif
    """
    name: str
    description: str
    motif_param: str
    single_motif: bool = False

    @property
    def parameters(self) -> List[str]:
        return ["edge_list", self.motif_param]

    def to_schema(self) -> Dict[str, Any]:
        """JSON schema in the name/description/input_schema layout."""
        return {
            "name": self.name,
            "description": self.description,
            "input_schema": {
                "type": "object",
                "properties": {"edge_list": EDGE_LIST_SCHEMA, self.motif_param: MOTIF_OBJECT_SCHEMA},
                "required": self.parameters,
            },
        }


def parse_edge_list(value: Any, path: str = "edge_list") -> DynamicGraph:
    """
    Validate an ``edge_list`` value and build the graph.

    Raises:
        ToolInputError: If the value is not a list of valid quadruplets
    """
    if not isinstance(value, list):
        raise ToolInputError("must be a list of 4-element arrays", path=path)
    events = []
    for i, item in enumerate(value):
        try:
            events.append(EdgeEvent.from_record(item))
        except DymotifException as exc:
            raise ToolInputError(exc.message, path=f"{path}[{i}]") from exc
    try:
        return DynamicGraph(tuple(events))
    except DymotifException as exc:
        raise ToolInputError(exc.message, path=path) from exc


def parse_motif_object(value: Any, path: str) -> MotifCatalog:
    """
    Validate a motif object and build a catalog with windows set.

    Raises:
        ToolInputError: If the object or one of its motifs is malformed
    """
    if not isinstance(value, Mapping) or not value:
        raise ToolInputError("must be a non-empty object mapping motif name to a nested object", path=path)
    patterns: Dict[str, MotifPattern] = {}
    for name, record in value.items():
        entry_path = f"{path}.{name}"
        if not isinstance(record, Mapping):
            raise ToolInputError("must be an object with edge_pattern and time_window", path=entry_path)
        for key in ("edge_pattern", "time_window"):
            if key not in record:
                raise ToolInputError(f"missing required field {key}", path=f"{entry_path}.{key}")
        try:
            patterns[str(name)] = motif_from_record(record, name=str(name))
        except DymotifException as exc:
            raise ToolInputError(exc.message, path=entry_path) from exc
    return MotifCatalog(patterns)


def validate_tool_input(spec: ToolSpec, tool_input: Any) -> Dict[str, Any]:
    """
    Validate a tool input against its spec.

    Args:
        spec: The tool's spec
        tool_input: Decoded Action Input

    Returns:
        ``{"graph": DynamicGraph, "catalog": MotifCatalog}``

    Raises:
        ToolInputError: With the path of the first failing field
    """
    if not isinstance(tool_input, Mapping):
        raise ToolInputError("Action Input must be a dictionary", path="$")
    for param in spec.parameters:
        if param not in tool_input:
            raise ToolInputError("missing required field", path=param)
    unknown = sorted(set(tool_input) - set(spec.parameters))
    if unknown:
        raise ToolInputError(f"unexpected field(s) {', '.join(unknown)}", path=unknown[0])
    graph = parse_edge_list(tool_input["edge_list"])
    catalog = parse_motif_object(tool_input[spec.motif_param], spec.motif_param)
    if spec.single_motif and len(catalog) != 1:
        raise ToolInputError(f"must hold exactly one motif, got {len(catalog)}", path=spec.motif_param)
    return {"graph": graph, "catalog": catalog}
