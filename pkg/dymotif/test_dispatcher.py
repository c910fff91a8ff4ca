import math
import random

import numpy as np
import pytest

from dymotif.bench import TaskKind, generate_dataset
from dymotif.dispatcher import (
    ID_COLUMNS,
    LABEL_HEADER,
    BoostingParams,
    DifficultyModel,
    DispatcherSolver,
    FeatureVector,
    GradientBoostedTrees,
    LabeledRow,
    build_label_dataset,
    equal_cost_rate,
    extract_features,
    predict_difficulty,
    random_baseline_accuracy,
    read_label_csv,
    route_and_solve,
    summarize_routes,
    train_classifier,
    write_label_csv,
)
from dymotif.evaluation import ModelAnswer, Solver
from dymotif.exceptions import FeatureArityError, ModelFileError, SingleClassError
from dymotif.graph import DynamicGraph, EdgeEvent, Op, parse_graph
from dymotif.tokens.models import TokenUsage


def test_locality_of_single_core_node():
    graph = parse_graph("[(0, 1, 0, a), (5, 6, 1, a), (0, 2, 2, a), (0, 3, 3, a)]")
    features = extract_features(graph)
    assert features.edge_locality == pytest.approx(math.sqrt(14 / 9))
    assert features.num_edges == 4
    assert features.cyclomatic == 0
    assert features.ratio_eq_2 == 0.0
    assert features.ratio_ge_3 == pytest.approx(1 / 6)


def test_structural_features():
    triangle = extract_features(parse_graph("[(0, 1, 0, a), (1, 2, 1, a), (2, 0, 2, a)]"))
    assert triangle.cyclomatic == 1
    assert triangle.ratio_eq_2 == 1.0
    assert extract_features(parse_graph("[(0, 1, 0, a), (2, 3, 1, a)]")).cyclomatic == 0
    assert extract_features(DynamicGraph()) == FeatureVector()
    # deletes count as events but add no projection edges
    churn = extract_features(parse_graph("[(0, 1, 0, a), (0, 1, 1, d), (0, 1, 2, a)]"))
    assert (churn.num_edges, churn.cyclomatic) == (3, 0)


def _components(nodes, edges):
    parent = {node: node for node in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    return len({find(node) for node in nodes})


def test_cyclomatic_matches_component_count():
    rng = random.Random(17)
    for _ in range(100):
        n = rng.randint(2, 9)
        events = []
        for _ in range(rng.randint(1, 15)):
            u, v = rng.sample(range(n), 2)
            events.append(EdgeEvent(u, v, rng.randrange(10), Op.ADD))
        graph = DynamicGraph(tuple(events))
        pairs = {e.pair for e in graph}
        nodes = {node for pair in pairs for node in pair}
        expected = len(pairs) - len(nodes) + _components(nodes, pairs)
        assert extract_features(graph).cyclomatic == expected


def random_event_graph(rng, n=8, count=14):
    events = []
    for t in range(count):
        u, v = rng.sample(range(n), 2)
        events.append(EdgeEvent(u, v, t, Op.ADD if rng.random() < 0.8 else Op.DELETE))
    return DynamicGraph(tuple(events))


def test_features_ignore_node_labels():
    rng = random.Random(23)
    for _ in range(50):
        graph = random_event_graph(rng)
        mapping = dict(zip(range(8), rng.sample(range(100, 200), 8)))
        relabeled = DynamicGraph(tuple(EdgeEvent(mapping[e.u], mapping[e.v], e.t, e.op) for e in graph))
        original, moved = extract_features(graph), extract_features(relabeled)
        assert (moved.num_edges, moved.cyclomatic) == (original.num_edges, original.cyclomatic)
        assert moved.as_list() == pytest.approx(original.as_list())


def test_appended_delete_only_counts_as_an_event():
    rng = random.Random(29)
    for _ in range(50):
        graph = random_event_graph(rng)
        adds = [e for e in graph if e.is_add]
        if not adds:
            continue
        target = rng.choice(adds)
        longer = graph.with_events([EdgeEvent(target.u, target.v, graph.max_time + 1, Op.DELETE)])
        before, after = extract_features(graph), extract_features(longer)
        assert after.num_edges == before.num_edges + 1
        assert after.cyclomatic == before.cyclomatic
        assert (after.ratio_eq_2, after.ratio_ge_3) == (before.ratio_eq_2, before.ratio_ge_3)


def separable_rows(n=1000, seed=5):
    rng = np.random.default_rng(seed)
    rows = []
    for _ in range(n):
        features = FeatureVector(
            num_edges=int(rng.integers(1, 60)),
            cyclomatic=int(rng.integers(0, 10)),
            ratio_eq_2=float(rng.random()),
            ratio_ge_3=float(rng.random()),
            edge_locality=float(rng.random() * 10),
        )
        label = int(features.num_edges > 30 and features.cyclomatic >= 3)
        rows.append(LabeledRow(features, label))
    return rows


def test_training_learns_separable_rule():
    model = train_classifier(separable_rows(), BoostingParams(n_estimators=30, seed=1))
    assert model.metadata["test_samples"] == 200
    assert model.metadata["heldout_accuracy"] >= 0.95


def test_training_is_deterministic():
    rows = separable_rows(200)
    params = BoostingParams(n_estimators=10, seed=3)
    assert train_classifier(rows, params).to_dict() == train_classifier(rows, params).to_dict()


def test_small_sets_have_no_held_out_part():
    rows = separable_rows(200)[:4]
    rows = [LabeledRow(r.features, i % 2) for i, r in enumerate(rows)]
    model = train_classifier(rows, BoostingParams(n_estimators=5))
    assert model.metadata["test_samples"] == 0
    assert model.metadata["heldout_accuracy"] is None


def test_single_class_rejected():
    rows = [LabeledRow(r.features, 0) for r in separable_rows(20)]
    with pytest.raises(SingleClassError):
        train_classifier(rows)


def test_boosting_base_score_and_split_direction():
    X = np.array([[0.0], [1.0], [2.0], [3.0]])
    y = np.array([0, 0, 1, 1])
    booster = GradientBoostedTrees(BoostingParams(n_estimators=20, max_depth=1, min_child_weight=0.0)).fit(X, y)
    assert booster.base_score == pytest.approx(0.0)
    assert booster.trees[0]["threshold"] == pytest.approx(1.5)
    probabilities = booster.predict_proba(X)
    assert probabilities[0] < 0.5 < probabilities[3]


def test_model_file_round_trip(tmp_path):
    model = train_classifier(separable_rows(200), BoostingParams(n_estimators=10))
    path = tmp_path / "model.json"
    model.save(str(path))
    loaded = DifficultyModel.load(str(path))
    row = separable_rows(3, seed=9)[0].features
    assert loaded.predict_proba(row) == model.predict_proba(row)
    with pytest.raises(FeatureArityError):
        loaded.predict_proba([1.0, 2.0])

    bad = tmp_path / "bad.json"
    bad.write_text('{"format": "something-else"}')
    with pytest.raises(ModelFileError):
        DifficultyModel.load(str(bad))
    with pytest.raises(ModelFileError):
        DifficultyModel.load(str(tmp_path / "missing.json"))


def test_threshold_extremes():
    model = train_classifier(separable_rows(200), BoostingParams(n_estimators=10))
    for row in separable_rows(20, seed=2):
        assert predict_difficulty(model, row.features, threshold=1.0).route == "direct"
        assert predict_difficulty(model, row.features, threshold=0.0).route == "agent"


def test_label_dataset_and_csv(tmp_path):
    instances = generate_dataset(TaskKind.DETECTION, "triangle", 4, seed=1)
    results = {
        instances[0].id: {"score": 1.0, "error": None},
        instances[1].id: {"score": 0.0, "error": None},
        instances[2].id: {"score": 0.0, "error": "Endpoint unreachable"},
    }
    rows, skipped = build_label_dataset(instances, results)
    assert [row.label for row in rows] == [0, 1]
    assert skipped == 2

    path = tmp_path / "labels.csv"
    assert write_label_csv(str(path), rows) == 2
    assert path.read_text().splitlines()[0] == ",".join(LABEL_HEADER + ID_COLUMNS)
    assert read_label_csv(str(path)) == rows
    assert {row.motif for row in rows} == {"triangle"}


def test_label_csv_without_id_columns(tmp_path):
    path = tmp_path / "bare.csv"
    path.write_text(",".join(LABEL_HEADER) + "\n3,0,0.5,0,1.25,1\n")
    (row,) = read_label_csv(str(path))
    assert row.label == 1 and row.features.edge_locality == 1.25
    assert row.instance_id is None and row.motif is None


def test_trained_model_keeps_motifs(tmp_path):
    rows = [LabeledRow(r.features, r.label, f"id-{n}", "4-cycle") for n, r in enumerate(separable_rows(40))]
    path = tmp_path / "labels.csv"
    write_label_csv(str(path), rows)
    model = train_classifier(read_label_csv(str(path)), BoostingParams(n_estimators=3))
    assert model.metadata["motifs"] == ["4-cycle"]


class FixedPath(Solver):
    """Answers from the ground truth, wrong on ``hard`` ids, at a fixed token cost."""

    def __init__(self, kind, tokens, hard=frozenset(), fail=False):
        self.kind = kind
        self.model = "fixed"
        self.tokens = tokens
        self.hard = hard
        self.fail = fail

    def solve(self, instance):
        usage = TokenUsage(self.tokens, 0)
        if self.fail:
            return ModelAnswer.from_error("Endpoint unreachable", usage=usage), self.kind
        label = bool(instance.ground_truth["label"])
        answer = (not label) if instance.id in self.hard else label
        return ModelAnswer(raw_text=f"Answer: {answer}", parsed=answer, usage=usage), self.kind


@pytest.fixture
def routed_instances():
    instances = generate_dataset(TaskKind.DETECTION, "triangle", 60, seed=4)
    sizes = [len(i.graph) for i in instances]
    cutoff = float(np.median(sizes))
    hard = frozenset(i.id for i in instances if len(i.graph) > cutoff)
    assert 0 < len(hard) < len(instances)
    return instances, hard


def test_dispatcher_trades_accuracy_for_tokens(routed_instances):
    instances, hard = routed_instances
    direct = FixedPath("direct", 100, hard=hard)
    agent = FixedPath("agent", 300)
    results = {i.id: {"score": 0.0 if i.id in hard else 1.0, "error": None} for i in instances}
    rows, _ = build_label_dataset(instances, results)
    model = train_classifier(rows, BoostingParams(n_estimators=20, test_fraction=0.0))

    def policy(threshold):
        return summarize_routes([route_and_solve(i, model, direct, agent, threshold) for i in instances])

    direct_only, agent_only, routed = policy(1.0), policy(0.0), policy(0.5)
    assert direct_only.agent_share == 0.0 and agent_only.agent_share == 1.0
    assert direct_only.accuracy < routed.accuracy <= agent_only.accuracy
    assert direct_only.mean_tokens < routed.mean_tokens < agent_only.mean_tokens

    rate = equal_cost_rate(direct_only.mean_tokens, agent_only.mean_tokens, routed.mean_tokens)
    baseline = random_baseline_accuracy(direct_only.accuracy, agent_only.accuracy, rate)
    assert routed.accuracy >= baseline


def test_fallback_sums_usage(routed_instances):
    instances, _ = routed_instances
    rows = [LabeledRow(extract_features(i.graph), n % 2) for n, i in enumerate(instances)]
    model = train_classifier(rows, BoostingParams(n_estimators=3))
    down = FixedPath("direct", 100, fail=True)
    agent = FixedPath("agent", 300)

    outcome = route_and_solve(instances[0], model, down, agent, threshold=1.0, fallback=True)
    assert outcome.fallback_used and outcome.route == "agent"
    assert outcome.tokens == 400 and outcome.score == 1.0

    no_fallback = route_and_solve(instances[0], model, down, agent, threshold=1.0)
    assert no_fallback.answer.failed and no_fallback.route == "direct"

    solver = DispatcherSolver(model, down, agent, threshold=1.0, fallback=True)
    answer, route = solver.solve(instances[0])
    assert route == "agent" and not answer.failed
    assert solver.describe()["fallback"] is True
