import numpy as np
import pytest

from dymotif.bench import (
    GenParams,
    TaskKind,
    ViolationTag,
    apply_restore,
    default_params,
    ego_sample,
    gen_classification_instance,
    gen_dynamic_graph,
    gen_level2_instance,
    generate_dataset,
    level2_catalog,
    make_rng,
    parameter_sweep,
    read_instances,
    same_shape,
    verify_instance,
    write_instances,
    write_sweep_csv,
)
from dymotif.bench.settings import CONSTRUCTION_SETTINGS, LEVEL2_N, LEVEL2_T_SPAN
from dymotif.exceptions import InputError, InvalidParamsError
from dymotif.graph import EdgeEvent
from dymotif.motifs import MOTIF_NAMES, classify_exact, detect
from dymotif.utils.helpers import dump_json_line


def test_forced_complete_graph():
    graph = gen_dynamic_graph(GenParams(n=3, p=1.0, del_prob=0.0, seed=1))
    assert len(graph) == 3
    assert all(e.is_add for e in graph)


def test_event_ranges():
    params = GenParams(n=10, p=0.5, t_span=5, del_prob=0.5, seed=4)
    graph = gen_dynamic_graph(params)
    adds = {e.pair: e.t for e in graph if e.is_add}
    assert all(0 <= t < params.t_span for t in adds.values())
    for event in graph:
        if not event.is_add:
            assert adds[event.pair] < event.t <= params.t_span


def test_edge_count_matches_binomial_mean():
    counts = [
        len(gen_dynamic_graph(GenParams(n=20, p=0.3, t_span=5, del_prob=0.0, seed=seed)).add_events)
        for seed in range(200)
    ]
    assert abs(np.mean(counts) - 57) <= 5.7


def test_generation_is_deterministic():
    first = generate_dataset(TaskKind.DETECTION, "triangle", 6, seed=11)
    second = generate_dataset(TaskKind.DETECTION, "triangle", 6, seed=11)
    assert [dump_json_line(i.to_record()) for i in first] == [dump_json_line(i.to_record()) for i in second]
    other = generate_dataset(TaskKind.DETECTION, "triangle", 6, seed=12)
    assert [i.graph for i in first] != [i.graph for i in other]


def test_params_validation():
    with pytest.raises(InvalidParamsError):
        GenParams(n=5, p=1.5)
    with pytest.raises(InvalidParamsError):
        GenParams(n=5, t_span=0)
    with pytest.raises(InvalidParamsError):
        GenParams(n=5, window=0)
    with pytest.raises(InvalidParamsError):
        generate_dataset(TaskKind.DETECTION, None, 1, seed=0)
    with pytest.raises(InvalidParamsError):
        default_params(TaskKind.CONSTRUCTION, "triangle", 0)


@pytest.mark.parametrize("motif", MOTIF_NAMES)
def test_classification_dataset_validity(motif):
    instances = generate_dataset(TaskKind.CLASSIFICATION, motif, 20, seed=5)
    positives = [i for i in instances if i.ground_truth["label"]]
    negatives = [i for i in instances if not i.ground_truth["label"]]
    assert len(positives) == len(negatives) == 10
    tags = [i.violation_tag for i in negatives]
    assert {tag: tags.count(tag) for tag in set(tags)} == {
        ViolationTag.STRUCTURAL: 4, ViolationTag.TEMPORAL: 3, ViolationTag.DURATION: 3,
    }
    for instance in positives:
        assert classify_exact(instance.graph, instance.pattern())
    for instance in negatives:
        pattern = instance.pattern()
        assert not classify_exact(instance.graph, pattern)
        restored = apply_restore(instance.graph, instance.metadata["perturbation"]["restore"])
        assert classify_exact(restored, pattern)
        # only a structural negative may leave the motif's static shape
        assert same_shape(instance.graph.events, pattern) == (instance.violation_tag is not ViolationTag.STRUCTURAL)
        if instance.violation_tag is ViolationTag.DURATION:
            times = [e.t for e in instance.graph]
            assert (min(times), max(times)) == (0, pattern.window + 1)
        assert verify_instance(instance)


def test_same_shape_ignores_time_and_direction():
    pattern = level2_catalog()["4-tailedtriangle"]
    events = [EdgeEvent(3, 0, 9), EdgeEvent(1, 0, 1), EdgeEvent(2, 1, 4), EdgeEvent(0, 2, 0)]
    assert same_shape(events, pattern)
    assert not same_shape(events[:3] + [EdgeEvent(2, 3, 0)], pattern)


def test_duration_negatives_stay_in_range_when_they_fit():
    params = GenParams(n=3, m=3, t_span=10, window=5, del_prob=0.0, seed=8)
    for index in range(10):
        instance = gen_classification_instance("triangle", params, False, ViolationTag.DURATION, index=index)
        times = [e.t for e in instance.graph]
        assert 0 <= min(times) and max(times) <= params.t_span - 1
        assert max(times) - min(times) == params.window + 1


def test_balanced_detection_labels():
    instances = generate_dataset(TaskKind.DETECTION, "triangle", 20, seed=3, balance=True)
    labels = [i.ground_truth["label"] for i in instances]
    assert labels == [index % 2 == 0 for index in range(20)]
    assert all(i.metadata["balanced"] for i in instances)
    assert all(verify_instance(i) for i in instances)


def test_natural_detection_labels_are_matcher_labels():
    instances = generate_dataset(TaskKind.DETECTION, "3-star", 10, seed=3)
    for instance in instances:
        assert instance.ground_truth["label"] == detect(instance.graph, instance.pattern())
        assert instance.metadata == {"attempts": 1, "balanced": False}


@pytest.mark.parametrize("motif, low, high", [("triangle", 0.60, 0.87), ("3-star", 0.80, 1.00)])
def test_natural_detection_rate(motif, low, high):
    instances = generate_dataset(TaskKind.DETECTION, motif, 200, seed=0)
    rate = float(np.mean([i.ground_truth["label"] for i in instances]))
    assert low <= rate <= high


@pytest.mark.parametrize("motif", sorted(CONSTRUCTION_SETTINGS))
def test_construction_soundness(motif):
    for instance in generate_dataset(TaskKind.CONSTRUCTION, motif, 20, seed=9):
        pattern = instance.pattern()
        completion = [EdgeEvent.from_record(r) for r in instance.ground_truth["completion"]]
        assert len(completion) == 1 and completion[0].is_add
        assert not detect(instance.graph, pattern)
        assert detect(instance.graph.with_events(completion), pattern)


def test_level2_instances():
    params = GenParams(n=LEVEL2_N, t_span=LEVEL2_T_SPAN, window=LEVEL2_T_SPAN, seed=2)
    instance = gen_level2_instance(params, TaskKind.MULTI_COUNT, index=0)
    assert verify_instance(instance)
    assert set(instance.ground_truth) == {"detect", "first_occurrence", "count"}
    assert level2_catalog()["triangle"].window == 3


def test_level2_common_motifs_appear():
    instances = generate_dataset(TaskKind.MULTI_DETECT, None, 10, seed=1)
    for motif in ("3-star", "triangle", "4-path"):
        assert any(i.ground_truth["detect"][motif] for i in instances)


@pytest.mark.parametrize("task", [
    TaskKind.SORT_EDGE, TaskKind.WHEN_LINK, TaskKind.WHAT_EDGES, TaskKind.REVERSE_GRAPH,
])
def test_level0_instances(task):
    instances = generate_dataset(task, None, 10, seed=8)
    assert all(verify_instance(i) for i in instances)
    if task is TaskKind.WHEN_LINK:
        assert all(i.ground_truth["t_link"] is not None for i in instances)


def test_instance_file_round_trip(tmp_path):
    path = tmp_path / "instances.jsonl"
    instances = generate_dataset(TaskKind.CLASSIFICATION, "triangle", 4, seed=0)
    write_instances(str(path), instances)
    loaded = read_instances(str(path))
    assert [i.to_record() for i in loaded] == [i.to_record() for i in instances]


def test_read_instances_errors(tmp_path):
    empty = tmp_path / "empty.jsonl"
    empty.write_text("")
    with pytest.raises(InputError):
        read_instances(str(empty))
    with pytest.raises(InputError):
        read_instances(str(tmp_path / "missing.jsonl"))


def test_sweep(tmp_path):
    rows = parameter_sweep("triangle", [8], [5], [0, 2, 4], seeds=range(5))
    assert [row.window for row in rows] == [0, 2, 4]
    assert rows[0].mean_count == 0.0
    means = [row.mean_count for row in rows]
    assert means == sorted(means)

    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    write_sweep_csv(str(first), rows)
    write_sweep_csv(str(second), parameter_sweep("triangle", [8], [5], [0, 2, 4], seeds=range(5)))
    assert first.read_bytes() == second.read_bytes()
    assert first.read_text().splitlines()[0] == "N,T,W,mean_count"


@pytest.fixture
def edge_file(tmp_path):
    path = tmp_path / "edges.txt"
    path.write_text("# u v t\n10 20 100\n20 30 105\n30 40 110\n10 30 120\n50 60 130\n")
    return str(path)


def test_ego_sample(edge_file):
    graph = ego_sample(edge_file, center=10, hops=1, seed=0)
    assert graph.node_set == set(range(len(graph.node_set)))
    assert min(e.t for e in graph) == 0
    assert all(e.is_add for e in graph)
    # nodes 10, 20, 30 -> 0, 1, 2
    assert {(e.pair, e.t) for e in graph} == {((0, 1), 0), ((1, 2), 5), ((0, 2), 20)}


def test_ego_sample_edge_cases(edge_file, tmp_path):
    assert len(ego_sample(edge_file, center=10, hops=0, seed=0)) == 0
    assert ego_sample(edge_file, seed=3) == ego_sample(edge_file, seed=3)
    with pytest.raises(InputError):
        ego_sample(edge_file, center=99, seed=0)
    empty = tmp_path / "empty.txt"
    empty.write_text("")
    with pytest.raises(InputError):
        ego_sample(str(empty), seed=0)


def test_rng_streams_are_independent():
    a = make_rng(1, 0, 0, 7).integers(1 << 30)
    b = make_rng(1, 1, 0, 7).integers(1 << 30)
    assert a != b
    assert make_rng(1, 0, 0, 7).integers(1 << 30) == a
