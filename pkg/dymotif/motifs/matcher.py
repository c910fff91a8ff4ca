"""
Temporal motif matcher.

Matching runs in two steps: networkx enumerates monomorphisms of the pattern's
static graph into the graph's Add projection, then each mapping is searched
for a strictly increasing timestamp assignment inside the window by
backtracking over the per-pair Add index. Only Add events take part.
"""
import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from ..graph import DynamicGraph, EdgeEvent, Op, Pair, make_pair
from .catalog import MotifPattern

logger = logging.getLogger(__name__)

SymbolEdges = Sequence[Tuple[int, int]]


@dataclass(frozen=True)
class MotifInstance:
    """
    One occurrence of a motif in a graph.

    Attributes:
        mapping: Node id per pattern symbol, indexed by symbol
        event_indices: Host event indices ordered by pattern rank
        timestamps: Timestamps of those events
    """
    mapping: Tuple[int, ...]
    event_indices: Tuple[int, ...]
    timestamps: Tuple[int, ...]

    @property
    def t_first(self) -> int:
        return self.timestamps[0]

    @property
    def t_last(self) -> int:
        return self.timestamps[-1]

    @property
    def key(self) -> Tuple[int, ...]:
        """Identity used for counting: the sorted event indices."""
        return tuple(sorted(self.event_indices))

    def events(self, graph: DynamicGraph) -> List[EdgeEvent]:
        return [graph.events[i] for i in self.event_indices]


def _host_graph(graph: DynamicGraph) -> nx.Graph:
    host = nx.Graph()
    host.add_edges_from(sorted(graph.add_index))
    return host


def _pattern_graph(edges: SymbolEdges) -> nx.Graph:
    pattern = nx.Graph()
    pattern.add_edges_from(edges)
    return pattern


def _mappings(host: nx.Graph, edges: SymbolEdges) -> Iterator[Dict[int, int]]:
    """Injective symbol -> node maps sending every pattern edge onto a host edge."""
    pattern = _pattern_graph(edges)
    if host.number_of_edges() < pattern.number_of_edges():
        return
    for host_to_symbol in GraphMatcher(host, pattern).subgraph_monomorphisms_iter():
        yield {symbol: node for node, symbol in host_to_symbol.items()}


def _timestamp_assignments(
    graph: DynamicGraph, pairs: Sequence[Pair], delta: int
) -> Iterator[Tuple[Tuple[int, int], ...]]:
    """
    Yield ``((t, index), ...)`` choices, one Add event per pair in rank order,
    with strictly increasing timestamps and span at most ``delta``.
    """
    chosen: List[Tuple[int, int]] = []

    def extend(rank: int) -> Iterator[Tuple[Tuple[int, int], ...]]:
        if rank == len(pairs):
            yield tuple(chosen)
            return
        after = chosen[-1][0] if chosen else None
        for t, index in graph.add_times(pairs[rank], after=after):
            if chosen and t - chosen[0][0] > delta:
                break
            chosen.append((t, index))
            yield from extend(rank + 1)
            chosen.pop()

    yield from extend(0)


def _iter_instances(
    graph: DynamicGraph, edges: SymbolEdges, delta: int, host: Optional[nx.Graph] = None
) -> Iterator[MotifInstance]:
    """All instances, possibly repeated under pattern automorphisms."""
    if not graph.add_index:
        return
    host = host if host is not None else _host_graph(graph)
    symbols = sorted({s for e in edges for s in e})
    for mapping in _mappings(host, edges):
        pairs = [make_pair(mapping[a], mapping[b]) for a, b in edges]
        for choice in _timestamp_assignments(graph, pairs, delta):
            yield MotifInstance(
                mapping=tuple(mapping[s] for s in symbols),
                event_indices=tuple(index for _, index in choice),
                timestamps=tuple(t for t, _ in choice),
            )


def _distinct(instances: Iterator[MotifInstance]) -> List[MotifInstance]:
    seen: Dict[Tuple[int, ...], MotifInstance] = {}
    for instance in instances:
        seen.setdefault(instance.key, instance)
    return [seen[key] for key in sorted(seen)]


def detect(graph: DynamicGraph, pattern: MotifPattern) -> bool:
    """
    Whether the graph contains at least one instance of the motif.

    Args:
        graph: Host dynamic graph
        pattern: Motif with its time window set

    Returns:
        True on the first witness found
    """
    for _ in _iter_instances(graph, pattern.edges, pattern.window):
        return True
    return False


def enumerate_instances(
    graph: DynamicGraph, pattern: MotifPattern, limit: Optional[int] = None
) -> List[MotifInstance]:
    """
    All distinct instances of the motif.

    Instances that select the same set of events are reported once. The list
    is ordered by sorted event indices and truncated to ``limit`` if given.
    """
    instances = _distinct(_iter_instances(graph, pattern.edges, pattern.window))
    if limit is not None:
        instances = instances[:limit]
    logger.debug("%s: %d instance(s) over %d events", pattern.name, len(instances), len(graph))
    return instances


def count(graph: DynamicGraph, pattern: MotifPattern) -> int:
    return len(enumerate_instances(graph, pattern))


def first_occurrence(graph: DynamicGraph, pattern: MotifPattern) -> Optional[int]:
    """Timestamp of the final edge of the earliest-completing instance, or None."""
    return min(
        (instance.t_last for instance in _iter_instances(graph, pattern.edges, pattern.window)),
        default=None,
    )


def classify_exact(graph: DynamicGraph, pattern: MotifPattern) -> bool:
    """
    Whether the graph as a whole is one instance of the motif.

    Delete events are ignored; the Add events must number exactly ``l`` and
    the graph must have exactly ``k`` nodes.
    """
    if len(graph.add_events) != pattern.l or len(graph.node_set) != pattern.k:
        return False
    return detect(graph, pattern)


def is_valid_instance(graph: DynamicGraph, pattern: MotifPattern, instance: MotifInstance) -> bool:
    """Re-check an instance against the structural, ordering and window constraints."""
    if len(instance.event_indices) != pattern.l or len(set(instance.mapping)) != len(instance.mapping):
        return False
    for rank, ((a, b), index) in enumerate(zip(pattern.edges, instance.event_indices)):
        event = graph.events[index]
        if not event.is_add or event.pair != make_pair(instance.mapping[a], instance.mapping[b]):
            return False
        if event.t != instance.timestamps[rank]:
            return False
    times = instance.timestamps
    if any(later <= earlier for earlier, later in zip(times, times[1:])):
        return False
    return times[-1] - times[0] <= pattern.window


def construct_completion(
    graph: DynamicGraph, pattern: MotifPattern, horizon: Optional[int] = None
) -> Optional[EdgeEvent]:
    """
    Find the single Add event that completes the motif.

    Prefix instances (all pattern edges but the last) are tried in order. The
    completion timestamp is the prefix's last timestamp plus one, which must
    stay inside the window and, when given, at or below ``horizon``. A symbol
    first introduced by the last edge maps to the smallest unused node id,
    falling back to a fresh id.

    Args:
        graph: Graph holding the prefix
        pattern: Motif to complete
        horizon: Largest allowed completion timestamp

    Returns:
        The completing event, or None when no prefix can be completed
    """
    if pattern.l < 2:
        return None
    prefix_edges = pattern.edges[:-1]
    a, b = pattern.edges[-1]
    prefix_symbols = sorted({s for e in prefix_edges for s in e})
    delta = pattern.window
    nodes = sorted(graph.node_set)
    fresh = (nodes[-1] + 1) if nodes else 0
    for prefix in _distinct(_iter_instances(graph, prefix_edges, delta)):
        t = prefix.t_last + 1
        if t - prefix.t_first > delta or (horizon is not None and t > horizon):
            continue
        mapping = dict(zip(prefix_symbols, prefix.mapping))
        missing = [s for s in (a, b) if s not in mapping]
        if missing:
            used = set(mapping.values())
            candidates = [n for n in nodes if n not in used] + [fresh]
        else:
            candidates = [None]
        for candidate in candidates:
            if candidate is not None:
                mapping[missing[0]] = candidate
            event = EdgeEvent(mapping[a], mapping[b], t, Op.ADD)
            if detect(graph.with_events([event]), pattern):
                return event
    return None
