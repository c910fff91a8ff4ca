import itertools
import random

import pytest

from dymotif.exceptions import MotifDefinitionError
from dymotif.graph import DynamicGraph, EdgeEvent, Op, make_pair, parse_graph
from dymotif.motifs import (
    MOTIF_NAMES,
    MotifCatalog,
    MotifPattern,
    catalog_from_records,
    catalog_to_records,
    classify_exact,
    construct_completion,
    count,
    detect,
    enumerate_instances,
    first_occurrence,
    is_valid_instance,
    motif_from_record,
    multi_count,
    multi_detect,
    multi_first_occurrence,
)

CATALOG = MotifCatalog()
COT_GRAPH = "[(1, 4, 0, a), (2, 3, 1, a), (4, 2, 2, a), (2, 1, 3, a), (0, 3, 4, a), (0, 3, 5, d)]"


def pattern(name, delta):
    return CATALOG[name].with_delta(delta)


def k4(times=range(6)):
    pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    return DynamicGraph(tuple(EdgeEvent(u, v, t) for (u, v), t in zip(pairs, times)))


def _consistent(edges, chosen):
    """Whether some injective symbol map sends every pattern edge onto its event's pair."""
    def extend(rank, mapping):
        if rank == len(edges):
            return True
        a, b = edges[rank]
        event = chosen[rank]
        for x, y in ((event.u, event.v), (event.v, event.u)):
            trial = dict(mapping)
            ok = True
            for symbol, node in ((a, x), (b, y)):
                if symbol in trial:
                    ok = ok and trial[symbol] == node
                elif node in trial.values():
                    ok = False
                else:
                    trial[symbol] = node
            if ok and extend(rank + 1, trial):
                return True
        return False
    return extend(0, {})


def brute_force(graph, motif):
    """Every l-subset of Add events checked against order, window and structure."""
    adds = [(i, e) for i, e in enumerate(graph.events) if e.is_add]
    found = {}
    for combo in itertools.combinations(adds, motif.l):
        ordered = sorted(combo, key=lambda item: item[1].t)
        times = [e.t for _, e in ordered]
        if any(later <= earlier for earlier, later in zip(times, times[1:])):
            continue
        if times[-1] - times[0] > motif.window:
            continue
        if _consistent(motif.edges, [e for _, e in ordered]):
            found[tuple(sorted(i for i, _ in ordered))] = times[-1]
    return found


def random_graph(rng):
    n = rng.randint(4, 8)
    t_span = rng.randint(1, 6)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    quads = []
    for _ in range(rng.randint(0, 12)):
        u, v = rng.choice(pairs)
        t = rng.randrange(t_span)
        quads.append(EdgeEvent(u, v, t, Op.ADD))
        if rng.random() < 0.2:
            quads.append(EdgeEvent(u, v, rng.randint(t + 1, t_span), Op.DELETE))
    return DynamicGraph(tuple(quads))


@pytest.mark.parametrize("name", MOTIF_NAMES)
def test_matcher_agrees_with_brute_force(name):
    rng = random.Random(f"oracle-{name}")
    for _ in range(50):
        graph = random_graph(rng)
        motif = pattern(name, rng.randint(0, 6))
        expected = brute_force(graph, motif)
        instances = enumerate_instances(graph, motif)
        assert {inst.key for inst in instances} == set(expected)
        assert all(is_valid_instance(graph, motif, inst) for inst in instances)
        assert count(graph, motif) == len(expected)
        assert detect(graph, motif) == bool(expected)
        assert first_occurrence(graph, motif) == min(expected.values(), default=None)


@pytest.mark.parametrize("name", MOTIF_NAMES)
def test_matcher_ignores_node_labels(name):
    rng = random.Random(f"relabel-{name}")
    for _ in range(30):
        graph = random_graph(rng)
        motif = pattern(name, rng.randint(1, 6))
        mapping = dict(zip(range(8), rng.sample(range(50, 90), 8)))
        relabeled = DynamicGraph(tuple(EdgeEvent(mapping[e.u], mapping[e.v], e.t, e.op) for e in graph))
        assert detect(relabeled, motif) == detect(graph, motif)
        assert count(relabeled, motif) == count(graph, motif)
        assert first_occurrence(relabeled, motif) == first_occurrence(graph, motif)
        assert [i.key for i in enumerate_instances(relabeled, motif)] == [
            i.key for i in enumerate_instances(graph, motif)
        ]


@pytest.mark.parametrize("name", MOTIF_NAMES)
def test_wider_window_keeps_every_instance(name):
    rng = random.Random(f"window-{name}")
    for _ in range(30):
        graph = random_graph(rng)
        narrow, wide = sorted(rng.sample(range(7), 2))
        inside = {i.key for i in enumerate_instances(graph, pattern(name, narrow))}
        outside = {i.key for i in enumerate_instances(graph, pattern(name, wide))}
        assert inside <= outside


def test_classify_exact():
    graph = parse_graph("[(1, 2, 0, a), (0, 2, 1, a), (0, 1, 4, a)]")
    assert classify_exact(graph, pattern("triangle", 5))
    assert not classify_exact(graph, pattern("triangle", 3))
    assert not classify_exact(parse_graph("[(1, 2, 0, a), (0, 2, 1, a)]"), pattern("triangle", 5))


def test_classify_rejects_extra_structure():
    graph = parse_graph("[(1, 2, 0, a), (0, 2, 1, a), (0, 1, 4, a), (0, 3, 4, a)]")
    assert detect(graph, pattern("triangle", 5))
    assert not classify_exact(graph, pattern("triangle", 5))


def test_detect_worked_graph():
    graph = parse_graph(COT_GRAPH)
    assert detect(graph, pattern("triangle", 4))
    assert first_occurrence(graph, pattern("triangle", 4)) == 3
    assert not detect(DynamicGraph(), pattern("triangle", 4))


def test_k4_has_four_triangles():
    assert count(k4(), pattern("triangle", 5)) == 4
    assert len(enumerate_instances(k4(), pattern("triangle", 5), limit=1)) == 1
    assert count(parse_graph("[(0, 1, 0, d)]"), pattern("triangle", 5)) == 0


def test_single_instance_counts():
    graph = parse_graph("[(0, 1, 0, a), (1, 2, 1, a), (2, 0, 2, a)]")
    assert count(graph, pattern("triangle", 5)) == 1
    assert first_occurrence(graph, pattern("triangle", 5)) == 2
    assert first_occurrence(graph, pattern("4-cycle", 5)) is None


def test_window_zero_blocks_every_motif():
    for name in MOTIF_NAMES:
        assert count(k4(), pattern(name, 0)) == 0


def test_construct_closes_cycle():
    graph = parse_graph("[(0, 1, 1, a), (1, 2, 2, a), (2, 3, 3, a)]")
    motif = pattern("4-cycle", 5)
    event = construct_completion(graph, motif)
    assert event.pair == make_pair(0, 3)
    assert event.t in (4, 5, 6)
    assert detect(graph.with_events([event]), motif)


def test_construct_respects_horizon_and_edge_cases():
    graph = parse_graph("[(0, 1, 1, a), (1, 2, 2, a), (2, 3, 3, a)]")
    assert construct_completion(graph, pattern("4-cycle", 5), horizon=3) is None
    assert construct_completion(DynamicGraph(), pattern("triangle", 5)) is None
    containing = parse_graph("[(0, 1, 0, a), (1, 2, 1, a), (2, 0, 2, a)]")
    event = construct_completion(containing, pattern("triangle", 5))
    assert event is not None
    assert detect(containing.with_events([event]), pattern("triangle", 5))


def test_construct_introduces_new_node():
    graph = parse_graph("[(0, 1, 0, a), (0, 2, 1, a)]")
    event = construct_completion(graph, pattern("3-star", 3))
    assert event.t == 2
    assert 0 in event.pair and event.pair not in ((0, 1), (0, 2))


def test_multi_operations():
    catalog = CATALOG.with_windows({"triangle": 3, "4-cycle": 6})
    assert multi_detect(DynamicGraph(), catalog) == {"triangle": False, "4-cycle": False}
    assert multi_first_occurrence(DynamicGraph(), catalog) == {}
    assert multi_count(DynamicGraph(), catalog) == {}

    triangle = parse_graph("[(0, 1, 0, a), (1, 2, 1, a), (2, 0, 2, a)]")
    assert multi_detect(triangle, catalog) == {"triangle": True, "4-cycle": False}
    assert multi_first_occurrence(triangle, catalog) == {"triangle": 2}
    assert multi_count(triangle, catalog) == {"triangle": 1}


def test_pattern_validation():
    with pytest.raises(MotifDefinitionError):
        MotifPattern("loop", ((0, 0),))
    with pytest.raises(MotifDefinitionError):
        MotifPattern("gap", ((0, 1), (2, 3)))
    with pytest.raises(MotifDefinitionError):
        MotifPattern("repeat", ((0, 1), (1, 0)))
    with pytest.raises(MotifDefinitionError):
        CATALOG["pentagon"]
    with pytest.raises(MotifDefinitionError):
        CATALOG["triangle"].window


def test_motif_records():
    catalog = CATALOG.with_windows({"triangle": 3, "butterfly": 6})
    assert dict(catalog_from_records(catalog_to_records(catalog))) == dict(catalog)
    shuffled = motif_from_record(
        {"edge_pattern": [["u1", "u2", "t1", "a"], ["u0", "u1", "t0", "a"], ["u2", "u0", "t2", "a"]],
         "time_window": "3"},
        name="triangle",
    )
    assert shuffled == pattern("triangle", 3)
    with pytest.raises(MotifDefinitionError):
        motif_from_record({"edge_pattern": [["u0", "u1", "t0", "a"]]}, name="edge")
    with pytest.raises(MotifDefinitionError):
        motif_from_record({"edge_pattern": [["x0", "u1", "t0", "a"]], "time_window": 1}, name="edge")


def test_catalog_shapes():
    assert len(CATALOG) == 9
    assert (CATALOG["bitriangle"].k, CATALOG["bitriangle"].l) == (6, 6)
    assert CATALOG["triangle"].with_delta(3).describe() == "3-node, 3-edge, 3-temporal motif"
