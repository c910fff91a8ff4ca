"""
Derived views of a dynamic graph and the Level-0 ground truths.
"""
from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Set, Tuple

import networkx as nx

from .events import DynamicGraph, EdgeEvent, Op, Pair, make_pair


@dataclass(frozen=True)
class StaticProjection:
    """
    Undirected simple graph of all pairs that ever receive an Add event.
    """
    nodes: FrozenSet[int]
    edges: FrozenSet[Pair]
    components: int

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(sorted(self.nodes))
        graph.add_edges_from(sorted(self.edges))
        return graph


def sort_events(graph: DynamicGraph) -> List[EdgeEvent]:
    """Stable chronological sort; equal timestamps keep their input order."""
    return sorted(graph.events, key=lambda e: e.t)


def first_link_dislink(graph: DynamicGraph, u: int, v: int) -> Tuple[Optional[int], Optional[int]]:
    """
    First Add and first Delete timestamps on the unordered pair {u, v}.

    Returns:
        Tuple of (t_link, t_dislink); a slot is None when that event type is absent
    """
    pair = make_pair(u, v)
    t_link = None
    t_dislink = None
    for event in graph.events:
        if event.pair != pair:
            continue
        if event.is_add:
            t_link = event.t if t_link is None else min(t_link, event.t)
        else:
            t_dislink = event.t if t_dislink is None else min(t_dislink, event.t)
    return t_link, t_dislink


def active_edges_at(graph: DynamicGraph, t: int) -> Set[Pair]:
    """
    Pairs whose latest event at or before ``t`` is an Add.

    Events sharing a timestamp on the same pair are resolved by event index:
    the later event in the sequence wins.
    """
    latest = {}
    for index, event in enumerate(graph.events):
        if event.t > t:
            continue
        key = (event.t, index)
        current = latest.get(event.pair)
        if current is None or key > current[0]:
            latest[event.pair] = (key, event.op)
    return {pair for pair, (_, op) in latest.items() if op is Op.ADD}


def reverse_graph(graph: DynamicGraph) -> DynamicGraph:
    """
    Flip every operation and sort chronologically, Add before Delete on ties.
    """
    flipped = [EdgeEvent(e.u, e.v, e.t, e.op.flipped()) for e in graph.events]
    flipped.sort(key=lambda e: (e.t, 0 if e.is_add else 1))
    return DynamicGraph(tuple(flipped))


def static_projection(graph: DynamicGraph) -> StaticProjection:
    """
    Distinct Add pairs as edges over the endpoints of Add events.
    """
    edges = frozenset(graph.add_index)
    nodes = frozenset(node for pair in edges for node in pair)
    projection = nx.Graph()
    projection.add_nodes_from(nodes)
    projection.add_edges_from(edges)
    components = nx.number_connected_components(projection) if nodes else 0
    return StaticProjection(nodes=nodes, edges=edges, components=components)
