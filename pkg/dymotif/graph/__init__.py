"""
Dynamic graph package for dymotif.
Provides the quadruplet data model, its text/JSONL formats and derived views.
"""
from .events import (
    DynamicGraph,
    EdgeEvent,
    Op,
    Pair,
    graph_from_record,
    graph_to_record,
    make_pair,
    parse_graph,
    serialize_graph,
)
from .views import (
    StaticProjection,
    active_edges_at,
    first_link_dislink,
    reverse_graph,
    sort_events,
    static_projection,
)

__all__ = [
    "DynamicGraph",
    "EdgeEvent",
    "Op",
    "Pair",
    "graph_from_record",
    "graph_to_record",
    "make_pair",
    "parse_graph",
    "serialize_graph",
    "StaticProjection",
    "active_edges_at",
    "first_link_dislink",
    "reverse_graph",
    "sort_events",
    "static_projection",
]
