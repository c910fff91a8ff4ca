"""
The five motif tools an agent can call.

Each handler receives the validated graph and catalog and returns the
observation text in the same answer format the direct prompts ask for.
"""
from typing import Any, Callable, Dict, Tuple

from ..bench.instances import TaskInstance, TaskKind
from ..graph import DynamicGraph, graph_to_record
from ..motifs import (
    MotifCatalog,
    catalog_to_records,
    construct_completion,
    detect,
    multi_count,
    multi_detect,
    multi_first_occurrence,
)
from .schema import ToolSpec

ToolHandler = Callable[[DynamicGraph, MotifCatalog], str]


def _only(catalog: MotifCatalog):
    return next(iter(catalog.values()))


def _pairs_text(values: Dict[str, int]) -> str:
    return "[" + ", ".join(f"({name}, {value})" for name, value in values.items()) + "]"


def motif_detection(graph: DynamicGraph, catalog: MotifCatalog) -> str:
    """Whether the motif occurs in the graph."""
    return "Yes" if detect(graph, _only(catalog)) else "No"


def motif_construction(graph: DynamicGraph, catalog: MotifCatalog) -> str:
    """One Add event that completes the motif, or an empty list."""
    event = construct_completion(graph, _only(catalog))
    return f"[{event.to_text()}]" if event else "[]"


def multi_motif_detection(graph: DynamicGraph, catalog: MotifCatalog) -> str:
    present = [name for name, found in multi_detect(graph, catalog).items() if found]
    return "[" + ", ".join(present) + "]"


def motif_occurrence_prediction(graph: DynamicGraph, catalog: MotifCatalog) -> str:
    return _pairs_text(multi_first_occurrence(graph, catalog))


def multi_motif_count(graph: DynamicGraph, catalog: MotifCatalog) -> str:
    return _pairs_text(multi_count(graph, catalog))


MOTIF_TOOLS: Tuple[Tuple[ToolSpec, ToolHandler], ...] = (
    (
        ToolSpec(
            "Motif_Detection",
            "Checks whether the temporal motif in motif_list occurs in the dynamic graph. Returns Yes or No.",
            "motif_list",
            single_motif=True,
        ),
        motif_detection,
    ),
    (
        ToolSpec(
            "Motif_Construction",
            "Returns one edge to add so that the dynamic graph contains the temporal motif in motif_list, "
            "as a list with a single (u, v, t, a) tuple.",
            "motif_list",
            single_motif=True,
        ),
        motif_construction,
    ),
    (
        ToolSpec(
            "Multi_Motif_Detection",
            "Lists the names of the temporal motifs in motif_definitions that occur in the dynamic graph.",
            "motif_definitions",
        ),
        multi_motif_detection,
    ),
    (
        ToolSpec(
            "Motif_Occurrence_Prediction",
            "For each temporal motif in motif_definitions that occurs, returns (name, time) where time is "
            "the timestamp at which its first instance completes.",
            "motif_definitions",
        ),
        motif_occurrence_prediction,
    ),
    (
        ToolSpec(
            "Multi_Motif_Count",
            "For each temporal motif in motif_definitions that occurs, returns (name, count) with the "
            "number of its instances.",
            "motif_definitions",
        ),
        multi_motif_count,
    ),
)

TASK_TOOLS: Dict[TaskKind, str] = {
    TaskKind.DETECTION: "Motif_Detection",
    TaskKind.CLASSIFICATION: "Motif_Detection",
    TaskKind.CONSTRUCTION: "Motif_Construction",
    TaskKind.MULTI_DETECT: "Multi_Motif_Detection",
    TaskKind.OCCURRENCE: "Motif_Occurrence_Prediction",
    TaskKind.MULTI_COUNT: "Multi_Motif_Count",
}


def tool_call_for(instance: TaskInstance) -> Tuple[str, Dict[str, Any]]:
    """
    The canonical tool call answering a benchmark instance.

    Classification maps to Motif_Detection, which checks containment rather
    than exact identity.

    Returns:
        ``(tool name, Action Input)``

    Raises:
        KeyError: For Level-0 tasks, which have no tool
    """
    name = TASK_TOOLS[instance.task]
    edge_list = graph_to_record(instance.graph)["events"]
    if instance.task.is_level2:
        return name, {"edge_list": edge_list, "motif_definitions": instance.query["motif_definitions"]}
    pattern = instance.pattern()
    return name, {"edge_list": edge_list, "motif_list": catalog_to_records(MotifCatalog({pattern.name: pattern}))}
