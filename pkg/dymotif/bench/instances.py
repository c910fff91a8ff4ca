"""
Benchmark task instances, their JSONL format and ground-truth recomputation.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional

from ..exceptions import InputError
from ..graph import (
    DynamicGraph,
    EdgeEvent,
    active_edges_at,
    first_link_dislink,
    graph_from_record,
    graph_to_record,
    reverse_graph,
    sort_events,
)
from ..motifs import (
    MotifCatalog,
    MotifPattern,
    catalog_from_records,
    catalog_to_records,
    classify_exact,
    construct_completion,
    detect,
    multi_count,
    multi_detect,
    multi_first_occurrence,
)
from ..utils.helpers import iter_json_lines, write_json_lines
from .params import GenParams

logger = logging.getLogger(__name__)


class TaskKind(str, Enum):
    """Benchmark task kinds."""
    CLASSIFICATION = "classification"
    DETECTION = "detection"
    CONSTRUCTION = "construction"
    MULTI_DETECT = "multi_detect"
    OCCURRENCE = "occurrence"
    MULTI_COUNT = "multi_count"
    SORT_EDGE = "level0_sort_edge"
    WHEN_LINK = "level0_when_link"
    WHAT_EDGES = "level0_what_edges"
    REVERSE_GRAPH = "level0_reverse_graph"

    @property
    def is_level2(self) -> bool:
        return self in LEVEL2_TASKS

    @property
    def is_level0(self) -> bool:
        return self.value.startswith("level0_")

    @classmethod
    def parse(cls, value: str) -> "TaskKind":
        try:
            return cls(value)
        except ValueError:
            raise InputError(f"Unknown task kind {value!r}; known: {', '.join(k.value for k in cls)}")


LEVEL1_TASKS = (TaskKind.CLASSIFICATION, TaskKind.DETECTION, TaskKind.CONSTRUCTION)
LEVEL2_TASKS = (TaskKind.MULTI_DETECT, TaskKind.OCCURRENCE, TaskKind.MULTI_COUNT)
LEVEL0_TASKS = (TaskKind.SORT_EDGE, TaskKind.WHEN_LINK, TaskKind.WHAT_EDGES, TaskKind.REVERSE_GRAPH)


class ViolationTag(str, Enum):
    """The single constraint a negative classification instance breaks."""
    STRUCTURAL = "structural"
    TEMPORAL = "temporal"
    DURATION = "duration"


@dataclass
class TaskInstance:
    """
    One generated benchmark item.

    The query holds what a prompt needs beyond the graph: ``time_window`` for
    single-motif tasks, ``motif_definitions`` for multi-motif tasks, ``u``/``v``
    or ``t`` for the Level-0 lookups.
    """
    id: str
    task: TaskKind
    graph: DynamicGraph
    motif: Optional[str] = None
    query: Dict[str, Any] = field(default_factory=dict)
    ground_truth: Dict[str, Any] = field(default_factory=dict)
    gen: Optional[GenParams] = None
    violation_tag: Optional[ViolationTag] = None
    metadata: Dict[str, Any] = field(default_factory=dict)

    def pattern(self) -> MotifPattern:
        """The queried motif with its window."""
        if self.motif is None:
            raise InputError(f"Instance {self.id} has no single query motif")
        return MotifCatalog()[self.motif].with_delta(int(self.query["time_window"]))

    def catalog(self) -> MotifCatalog:
        """The queried motifs of a multi-motif instance."""
        return catalog_from_records(self.query["motif_definitions"])

    def to_record(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "task": self.task.value,
            "motif": self.motif,
            "graph": graph_to_record(self.graph),
            "query": self.query,
            "ground_truth": self.ground_truth,
            "gen": self.gen.to_dict() if self.gen else None,
            "violation_tag": self.violation_tag.value if self.violation_tag else None,
            "metadata": self.metadata,
        }

    @classmethod
    def from_record(cls, record: Dict[str, Any]) -> "TaskInstance":
        try:
            return cls(
                id=str(record["id"]),
                task=TaskKind.parse(record["task"]),
                graph=graph_from_record(record["graph"]),
                motif=record.get("motif"),
                query=dict(record.get("query") or {}),
                ground_truth=dict(record.get("ground_truth") or {}),
                gen=GenParams.from_dict(record["gen"]) if record.get("gen") else None,
                violation_tag=ViolationTag(record["violation_tag"]) if record.get("violation_tag") else None,
                metadata=dict(record.get("metadata") or {}),
            )
        except KeyError as exc:
            raise InputError(f"Instance record is missing field {exc.args[0]!r}") from exc
        except ValueError as exc:
            raise InputError(f"Instance record has a bad value: {exc}") from exc


def level2_query(catalog: MotifCatalog) -> Dict[str, Any]:
    return {"motif_definitions": catalog_to_records(catalog)}


def recompute_ground_truth(instance: TaskInstance) -> Dict[str, Any]:
    """
    Derive the ground truth of an instance from its graph and query alone.
    """
    graph = instance.graph
    task = instance.task
    if task is TaskKind.CLASSIFICATION:
        return {"label": classify_exact(graph, instance.pattern())}
    if task is TaskKind.DETECTION:
        return {"label": detect(graph, instance.pattern())}
    if task is TaskKind.CONSTRUCTION:
        horizon = instance.gen.t_span - 1 if instance.gen else None
        event = construct_completion(graph, instance.pattern(), horizon=horizon)
        return {"completion": [event.to_record()] if event else []}
    if task.is_level2:
        catalog = instance.catalog()
        return {
            "detect": multi_detect(graph, catalog),
            "first_occurrence": multi_first_occurrence(graph, catalog),
            "count": multi_count(graph, catalog),
        }
    if task is TaskKind.SORT_EDGE:
        return {"events": [e.to_record() for e in sort_events(graph)]}
    if task is TaskKind.WHEN_LINK:
        t_link, t_dislink = first_link_dislink(graph, instance.query["u"], instance.query["v"])
        return {"t_link": t_link, "t_dislink": t_dislink}
    if task is TaskKind.WHAT_EDGES:
        return {"edges": [list(pair) for pair in sorted(active_edges_at(graph, instance.query["t"]))]}
    if task is TaskKind.REVERSE_GRAPH:
        return {"events": [e.to_record() for e in reverse_graph(graph).events]}
    raise InputError(f"No ground truth rule for task {task.value}")


def verify_instance(instance: TaskInstance) -> bool:
    """
    Check the stored ground truth against a fresh recomputation.

    Construction instances are checked by their emission contract instead:
    the motif is absent before and present after the stored completion.
    """
    if instance.task is TaskKind.CONSTRUCTION:
        completion = [EdgeEvent.from_record(r) for r in instance.ground_truth.get("completion", [])]
        pattern = instance.pattern()
        return (
            len(completion) == 1
            and completion[0].is_add
            and not detect(instance.graph, pattern)
            and detect(instance.graph.with_events(completion), pattern)
        )
    return recompute_ground_truth(instance) == instance.ground_truth


def read_instances(path: str) -> List[TaskInstance]:
    """
    Load a JSONL instance file.

    Raises:
        InputError: If the file is unreadable, malformed or empty
    """
    instances = [TaskInstance.from_record(record) for record in iter_json_lines(path)]
    if not instances:
        raise InputError(f"{path} holds no instances")
    logger.debug("Loaded %d instances from %s", len(instances), path)
    return instances


def write_instances(path: str, instances: Iterable[TaskInstance], append: bool = False) -> int:
    return write_json_lines(path, (instance.to_record() for instance in instances), append=append)
