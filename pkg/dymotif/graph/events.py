"""
Dynamic graph data model.

A dynamic graph is an ordered sequence of quadruplets ``(u, v, t, op)`` where
``op`` marks an edge addition (``a``) or deletion (``d``). Event order is the
order of the source text and is preserved everywhere.
"""
import bisect
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Tuple

from ..exceptions import GraphParseError

Pair = Tuple[int, int]


class Op(str, Enum):
    """Edge operation."""
    ADD = "a"
    DELETE = "d"

    def flipped(self) -> "Op":
        return Op.DELETE if self is Op.ADD else Op.ADD


def make_pair(u: int, v: int) -> Pair:
    """Canonical key of the unordered pair {u, v}."""
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class EdgeEvent:
    """
    One quadruplet of a dynamic graph.
    """
    u: int
    v: int
    t: int
    op: Op = Op.ADD

    @property
    def pair(self) -> Pair:
        return make_pair(self.u, self.v)

    @property
    def is_add(self) -> bool:
        return self.op is Op.ADD

    def to_text(self) -> str:
        return f"({self.u}, {self.v}, {self.t}, {self.op.value})"

    def to_record(self) -> List[Any]:
        return [self.u, self.v, self.t, self.op.value]

    @classmethod
    def from_record(cls, record: Any) -> "EdgeEvent":
        """
        Build an event from a 4-element array ``[u, v, t, "a"|"d"]``.

        Raises:
            GraphParseError: If the record is not a valid quadruplet
        """
        if not isinstance(record, (list, tuple)) or len(record) != 4:
            raise GraphParseError(f"Expected a 4-element array, got {record!r}")
        u, v, t, op = record
        for name, value in (("u", u), ("v", v), ("t", t)):
            if isinstance(value, bool) or not isinstance(value, int) or value < 0:
                raise GraphParseError(f"Field {name} must be a non-negative integer, got {value!r}")
        try:
            op = Op(str(op).strip().lower())
        except ValueError:
            raise GraphParseError(f"Unknown operation token {op!r}")
        return cls(u, v, t, op)


@dataclass(frozen=True)
class DynamicGraph:
    """
    Ordered event sequence with its derived views.

    ``add_index`` maps each unordered pair to its Add events as ascending
    ``(timestamp, event_index)`` tuples. The graph is immutable after
    construction and safe to share across workers.
    """
    events: Tuple[EdgeEvent, ...] = ()
    node_set: FrozenSet[int] = field(init=False, repr=False, compare=False)
    add_index: Dict[Pair, Tuple[Tuple[int, int], ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        events = tuple(self.events)
        nodes = set()
        index: Dict[Pair, List[Tuple[int, int]]] = {}
        for i, event in enumerate(events):
            if event.u == event.v:
                raise GraphParseError(f"Self-loop on node {event.u} at event {i}")
            nodes.add(event.u)
            nodes.add(event.v)
            if event.is_add:
                index.setdefault(event.pair, []).append((event.t, i))
        object.__setattr__(self, "events", events)
        object.__setattr__(self, "node_set", frozenset(nodes))
        object.__setattr__(
            self, "add_index", {pair: tuple(sorted(entries)) for pair, entries in index.items()}
        )

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self):
        return iter(self.events)

    @property
    def add_events(self) -> List[Tuple[int, EdgeEvent]]:
        """Add events with their event indices."""
        return [(i, e) for i, e in enumerate(self.events) if e.is_add]

    @property
    def max_time(self) -> Optional[int]:
        return max((e.t for e in self.events), default=None)

    def add_times(self, pair: Pair, after: Optional[int] = None) -> Tuple[Tuple[int, int], ...]:
        """Add ``(timestamp, index)`` entries on a pair, optionally strictly after a timestamp."""
        entries = self.add_index.get(pair, ())
        if after is None:
            return entries
        start = bisect.bisect_right(entries, (after, len(self.events)))
        return entries[start:]

    def with_events(self, extra: Iterable[EdgeEvent]) -> "DynamicGraph":
        """A new graph with events appended after the existing ones."""
        return DynamicGraph(self.events + tuple(extra))

    def to_text(self) -> str:
        return serialize_graph(self)

    def to_record(self) -> Dict[str, Any]:
        return graph_to_record(self)


_TUPLE_RE = re.compile(
    r"\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*['\"]?([A-Za-z]+)['\"]?\s*\)\s*"
)


def parse_graph(text: str) -> DynamicGraph:
    """
    Parse a quadruplet list literal such as ``[(1, 2, 0, a), (0, 2, 1, d)]``.

    Args:
        text: Bracketed, comma-separated list of 4-tuples

    Returns:
        DynamicGraph with events in textual order

    Raises:
        GraphParseError: On a malformed tuple or an unknown op token
    """
    stripped = text.strip()
    if not stripped.startswith("[") or not stripped.endswith("]"):
        raise GraphParseError("Expected a bracketed list of quadruplets", position=0)
    offset = text.index("[") + 1
    end = text.rindex("]")
    events = []
    pos = offset
    if text[pos:end].strip():
        while True:
            match = _TUPLE_RE.match(text, pos, end)
            if not match:
                raise GraphParseError("Malformed quadruplet", position=pos)
            u, v, t, token = match.groups()
            try:
                op = Op(token.lower())
            except ValueError:
                raise GraphParseError(f"Unknown operation token {token!r}", position=match.start(4))
            events.append(EdgeEvent(int(u), int(v), int(t), op))
            pos = match.end()
            if pos >= end:
                break
            if text[pos] != ",":
                raise GraphParseError("Expected ',' between quadruplets", position=pos)
            pos += 1
    return DynamicGraph(tuple(events))


def serialize_graph(graph: DynamicGraph) -> str:
    """Inverse of parse_graph."""
    return "[" + ", ".join(e.to_text() for e in graph.events) + "]"


def graph_to_record(graph: DynamicGraph) -> Dict[str, Any]:
    """JSONL graph record ``{"events": [[u, v, t, "a"], ...]}``."""
    return {"events": [e.to_record() for e in graph.events]}


def graph_from_record(record: Dict[str, Any]) -> DynamicGraph:
    """
    Build a graph from a JSONL record.

    Raises:
        GraphParseError: If the record has no event list or an event is malformed
    """
    if not isinstance(record, dict) or not isinstance(record.get("events"), list):
        raise GraphParseError("Graph record must be an object with an 'events' array")
    events = []
    for i, item in enumerate(record["events"]):
        try:
            events.append(EdgeEvent.from_record(item))
        except GraphParseError as exc:
            raise GraphParseError(exc.message, position=i) from exc
    return DynamicGraph(tuple(events))
