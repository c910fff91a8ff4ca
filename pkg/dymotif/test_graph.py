import random

import pytest

from dymotif.exceptions import GraphParseError
from dymotif.graph import (
    DynamicGraph,
    EdgeEvent,
    Op,
    active_edges_at,
    first_link_dislink,
    graph_from_record,
    graph_to_record,
    parse_graph,
    reverse_graph,
    serialize_graph,
    sort_events,
    static_projection,
)


def events(*quads):
    return DynamicGraph(tuple(EdgeEvent(u, v, t, Op(op)) for u, v, t, op in quads))


def test_parse_prompt_graph():
    graph = parse_graph("[(1, 2, 0, a), (0, 2, 1, a), (0, 1, 4, a)]")
    assert len(graph) == 3
    assert graph.node_set == {0, 1, 2}
    assert graph.events[1] == EdgeEvent(0, 2, 1, Op.ADD)


def test_parse_empty_graph():
    graph = parse_graph("[]")
    assert len(graph) == 0
    assert graph.node_set == frozenset()


def test_add_index_skips_deletes():
    graph = parse_graph("[(7, 8, 1, a), (7, 8, 6, d), (7, 8, 7, a)]")
    assert [t for t, _ in graph.add_index[(7, 8)]] == [1, 7]


def test_parse_tolerates_quotes_and_case():
    graph = parse_graph("[(1, 2, 0, 'a'), (1, 2, 3, \"D\")]")
    assert [e.op for e in graph] == [Op.ADD, Op.DELETE]


@pytest.mark.parametrize("text", [
    "(1, 2, 0, a)",
    "[(1, 2, a)]",
    "[(1, 2, 0, x)]",
    "[(1, 2, 0, a) (2, 3, 1, a)]",
])
def test_parse_errors(text):
    with pytest.raises(GraphParseError):
        parse_graph(text)


def test_parse_error_reports_position():
    with pytest.raises(GraphParseError) as info:
        parse_graph("[(1, 2, 0, a), (1, 2)]")
    assert info.value.position is not None and info.value.position > 0


def test_self_loop_rejected():
    with pytest.raises(GraphParseError):
        parse_graph("[(3, 3, 0, a)]")


def test_text_and_record_forms_agree():
    text = "[(1, 2, 0, a), (0, 2, 1, d)]"
    graph = parse_graph(text)
    assert serialize_graph(graph) == text
    assert graph_from_record(graph_to_record(graph)) == graph


def test_graph_record_errors():
    with pytest.raises(GraphParseError):
        graph_from_record({"edges": []})
    with pytest.raises(GraphParseError):
        graph_from_record({"events": [[0, 1, -1, "a"]]})


def test_sort_events():
    graph = events((0, 1, 3, "a"), (2, 3, 0, "a"))
    assert sort_events(graph) == [EdgeEvent(2, 3, 0), EdgeEvent(0, 1, 3)]


def test_sort_events_is_stable_and_matches_oracle():
    rng = random.Random(3)
    quads = [(i, i + 1, rng.randrange(4), "a") for i in range(10)]
    graph = events(*quads)
    expected = [EdgeEvent(u, v, t) for u, v, t, _ in sorted(quads, key=lambda q: q[2])]
    assert sort_events(graph) == expected
    already = DynamicGraph(tuple(expected))
    assert sort_events(already) == list(already.events)


def test_first_link_dislink():
    graph = events((7, 8, 1, "a"), (7, 8, 6, "d"), (7, 8, 7, "a"))
    assert first_link_dislink(graph, 8, 7) == (1, 6)
    assert first_link_dislink(graph, 1, 2) == (None, None)
    assert first_link_dislink(events((1, 2, 4, "a"), (2, 1, 2, "a")), 1, 2) == (2, None)


def test_active_edges_at():
    graph = events((7, 8, 1, "a"), (7, 8, 6, "d"))
    assert active_edges_at(graph, 5) == {(7, 8)}
    assert active_edges_at(graph, 6) == set()
    assert active_edges_at(graph, 0) == set()
    assert active_edges_at(DynamicGraph(), 3) == set()


def test_active_edges_same_time_later_event_wins():
    graph = events((0, 1, 2, "a"), (0, 1, 2, "d"))
    assert active_edges_at(graph, 2) == set()


def test_reverse_graph():
    assert reverse_graph(events((0, 1, 2, "a"))).events == (EdgeEvent(0, 1, 2, Op.DELETE),)
    reversed_graph = reverse_graph(events((0, 1, 2, "a"), (0, 1, 2, "d")))
    assert [e.op for e in reversed_graph] == [Op.ADD, Op.DELETE]


def test_static_projection():
    triangle = events((0, 1, 0, "a"), (1, 2, 1, "a"), (2, 0, 2, "a"))
    projection = static_projection(triangle)
    assert (len(projection.nodes), len(projection.edges), projection.components) == (3, 3, 1)

    disjoint = static_projection(events((0, 1, 0, "a"), (2, 3, 1, "a")))
    assert (len(disjoint.nodes), len(disjoint.edges), disjoint.components) == (4, 2, 2)

    repeated = static_projection(events((0, 1, 0, "a"), (0, 1, 1, "d"), (1, 0, 2, "a")))
    assert repeated.edges == frozenset({(0, 1)})
