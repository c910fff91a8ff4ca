"""
Seeded generators for every benchmark task.

Every instance owns a random stream derived from (seed, index, attempt, task
and motif tag), so datasets are reproducible and instances can be generated
in any order or in parallel.
"""
import itertools
import logging
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from tqdm import tqdm

from ..exceptions import GenerationError, InvalidParamsError
from ..graph import DynamicGraph, EdgeEvent, Op, make_pair
from ..motifs import MotifCatalog, MotifPattern, classify_exact, construct_completion, detect
from ..utils.helpers import make_instance_id
from .instances import LEVEL0_TASKS, TaskInstance, TaskKind, ViolationTag, level2_query, recompute_ground_truth
from .params import GenParams, make_rng, stream_tag
from .settings import (
    CLASSIFICATION_SETTINGS,
    CONSTRUCTION_SETTINGS,
    DEFAULT_RETRY_BUDGET,
    DETECTION_SETTINGS,
    LEVEL0_N,
    LEVEL0_T_SPAN,
    LEVEL2_N,
    LEVEL2_T_SPAN,
    LEVEL2_WINDOWS,
)

logger = logging.getLogger(__name__)

VIOLATION_CYCLE = (ViolationTag.STRUCTURAL, ViolationTag.TEMPORAL, ViolationTag.DURATION)


def _event_order(event: EdgeEvent) -> Tuple[int, int, Tuple[int, int]]:
    return (event.t, 0 if event.is_add else 1, event.pair)


def _random_events(params: GenParams, rng: np.random.Generator) -> List[EdgeEvent]:
    """ER(N, p) edges (or exactly M edges) with one Add each and optional Deletes."""
    rows, cols = np.triu_indices(params.n, k=1)
    if params.m is not None:
        if params.m > len(rows):
            raise InvalidParamsError(f"m={params.m} exceeds the {len(rows)} possible pairs on {params.n} nodes")
        chosen = np.sort(rng.choice(len(rows), size=params.m, replace=False))
    else:
        chosen = np.flatnonzero(rng.random(len(rows)) < params.p)
    add_times = rng.integers(0, params.t_span, size=len(chosen))
    flips = rng.random(len(chosen)) < 0.5
    deletes = rng.random(len(chosen)) < params.del_prob
    events = []
    for pos, edge in enumerate(chosen):
        u, v = int(rows[edge]), int(cols[edge])
        if flips[pos]:
            u, v = v, u
        t_add = int(add_times[pos])
        events.append(EdgeEvent(u, v, t_add, Op.ADD))
        if deletes[pos]:
            events.append(EdgeEvent(u, v, int(rng.integers(t_add + 1, params.t_span + 1)), Op.DELETE))
    return events


def gen_dynamic_graph(params: GenParams, rng: Optional[np.random.Generator] = None) -> DynamicGraph:
    """
    Random dynamic graph.

    Each ER edge gets one Add at a uniform time in ``{0..T-1}``; with
    probability ``del_prob`` it also gets one Delete at a uniform time in
    ``{t_add+1..T}``. Events are sorted by time, Adds before Deletes, then pair.

    Args:
        params: Generation parameters
        rng: Random stream; derived from ``params.seed`` when omitted

    Returns:
        The generated graph
    """
    rng = rng if rng is not None else make_rng(params.seed)
    return DynamicGraph(tuple(sorted(_random_events(params, rng), key=_event_order)))


def _increasing_times(
    rng: np.random.Generator, count: int, low: int, high: int, max_span: int, budget: int = 100
) -> Optional[List[int]]:
    """``count`` distinct sorted times from ``[low, high)`` spanning at most ``max_span``."""
    if count > high - low:
        return None
    for _ in range(budget):
        times = sorted(int(t) for t in rng.choice(np.arange(low, high), size=count, replace=False))
        if times[-1] - times[0] <= max_span:
            return times
    return None


def _implant(pattern_edges: Sequence[Tuple[int, int]], nodes: Sequence[int], times: Sequence[int],
             rng: np.random.Generator) -> List[EdgeEvent]:
    events = []
    for (a, b), t in zip(pattern_edges, times):
        u, v = nodes[a], nodes[b]
        if rng.random() < 0.5:
            u, v = v, u
        events.append(EdgeEvent(int(u), int(v), int(t), Op.ADD))
    return events


def _positive_events(pattern: MotifPattern, params: GenParams, rng: np.random.Generator) -> Optional[List[EdgeEvent]]:
    times = _increasing_times(rng, pattern.l, 0, params.t_span, pattern.window)
    if times is None:
        return None
    nodes = [int(n) for n in rng.permutation(params.n)[: pattern.k]]
    return _implant(pattern.edges, nodes, times, rng)


def _emit(pairs: List[Tuple[EdgeEvent, EdgeEvent]]) -> Tuple[DynamicGraph, List[list]]:
    """
    Sort perturbed events by time and record how to restore the originals.

    Args:
        pairs: (perturbed, original) events

    Returns:
        The emitted graph and ``[[index, [u, v, t, op]], ...]`` restore entries
    """
    ordered = sorted(pairs, key=lambda pair: pair[0].t)
    graph = DynamicGraph(tuple(p for p, _ in ordered))
    restore = [[i, o.to_record()] for i, (p, o) in enumerate(ordered) if p != o]
    return graph, restore


def apply_restore(graph: DynamicGraph, restore: Sequence[Sequence]) -> DynamicGraph:
    """Undo a classification perturbation."""
    events = list(graph.events)
    for index, record in restore:
        events[index] = EdgeEvent.from_record(record)
    return DynamicGraph(tuple(events))


def same_shape(events: Sequence[EdgeEvent], pattern: MotifPattern) -> bool:
    """Whether the Add pairs of ``events`` form the pattern's static graph, ignoring time."""
    shape = nx.Graph([e.pair for e in events if e.is_add])
    return nx.is_isomorphic(shape, nx.Graph(list(pattern.edges)))


def _structural(pattern: MotifPattern, events: List[EdgeEvent], rng: np.random.Generator):
    """Move one edge so the static shape changes; times stay as they are."""
    nodes = sorted({n for e in events for n in (e.u, e.v)})
    used = {e.pair for e in events}
    free = [p for p in itertools.combinations(nodes, 2) if p not in used]
    fresh = max(nodes) + 1
    # dense motifs have no in-range pair that breaks the shape
    candidates = [free[i] for i in rng.permutation(len(free))]
    candidates += [(nodes[i], fresh) for i in rng.permutation(len(nodes))]
    for position in rng.permutation(len(events)):
        for u, v in candidates:
            original = events[position]
            perturbed = list(events)
            perturbed[position] = EdgeEvent(u, v, original.t, Op.ADD)
            if same_shape(perturbed, pattern):
                continue
            graph, restore = _emit(list(zip(perturbed, events)))
            if not classify_exact(graph, pattern):
                return graph, restore
    return None


def _temporal(pattern: MotifPattern, events: List[EdgeEvent], rng: np.random.Generator):
    times = [e.t for e in events]
    orders = list(itertools.permutations(range(len(events))))
    for choice in rng.permutation(len(orders)):
        order = orders[choice]
        if list(order) == list(range(len(events))):
            continue
        perturbed = [EdgeEvent(e.u, e.v, times[order[i]], e.op) for i, e in enumerate(events)]
        graph, restore = _emit(list(zip(perturbed, events)))
        if not classify_exact(graph, pattern):
            return graph, restore
    # every reordering is automorphic: break strict increase with a tie
    for position in range(1, len(events)):
        perturbed = list(events)
        tied = events[position]
        perturbed[position] = EdgeEvent(tied.u, tied.v, events[position - 1].t, tied.op)
        graph, restore = _emit(list(zip(perturbed, events)))
        if not classify_exact(graph, pattern):
            return graph, restore
    return None


def _duration(pattern: MotifPattern, events: List[EdgeEvent], rng: np.random.Generator):
    """
    Stretch the span to exactly ``window + 1``.

    Times are re-anchored at 0, so the last event lands on ``window + 1``:
    inside ``[0, T-1]`` whenever ``window + 2 <= T``, and the smallest
    possible overrun otherwise.
    """
    start = events[0].t
    shift = pattern.window + 1 - (events[-1].t - start)
    perturbed = [EdgeEvent(events[0].u, events[0].v, 0, events[0].op)]
    perturbed += [EdgeEvent(e.u, e.v, e.t - start + shift, e.op) for e in events[1:]]
    graph, restore = _emit(list(zip(perturbed, events)))
    if classify_exact(graph, pattern):
        return None
    return graph, restore


_PERTURBATIONS = {
    ViolationTag.STRUCTURAL: _structural,
    ViolationTag.TEMPORAL: _temporal,
    ViolationTag.DURATION: _duration,
}


def gen_classification_instance(
    motif: str,
    params: GenParams,
    positive: bool,
    violation: Optional[ViolationTag] = None,
    index: int = 0,
    budget: int = DEFAULT_RETRY_BUDGET,
) -> TaskInstance:
    """
    One classification instance: an exact motif or a single-violation negative.

    Negatives perturb a generated positive in one aspect and carry a
    ``perturbation.restore`` list that turns them back into a positive.

    Raises:
        GenerationError: If no valid instance is found within the retry budget
    """
    if not positive and violation is None:
        raise InvalidParamsError("A negative classification instance needs a violation tag")
    violation = ViolationTag(violation) if violation is not None else None
    pattern = MotifCatalog()[motif].with_delta(params.window)
    if params.n < pattern.k:
        raise InvalidParamsError(f"{motif} needs at least {pattern.k} nodes, got n={params.n}")
    tag = stream_tag(TaskKind.CLASSIFICATION.value, motif)
    for attempt in range(budget):
        rng = make_rng(params.seed, index, attempt, tag)
        events = _positive_events(pattern, params, rng)
        if events is None:
            continue
        metadata = {"attempts": attempt + 1}
        if positive:
            graph = DynamicGraph(tuple(events))
            if not classify_exact(graph, pattern):
                continue
        else:
            result = _PERTURBATIONS[violation](pattern, events, rng)
            if result is None:
                continue
            graph, restore = result
            if not classify_exact(apply_restore(graph, restore), pattern):
                continue
            metadata["perturbation"] = {"restore": restore}
        return TaskInstance(
            id=make_instance_id(TaskKind.CLASSIFICATION.value, motif, params.seed, index),
            task=TaskKind.CLASSIFICATION,
            graph=graph,
            motif=motif,
            query={"time_window": params.window},
            ground_truth={"label": positive},
            gen=params,
            violation_tag=None if positive else violation,
            metadata=metadata,
        )
    raise GenerationError(f"No {motif} classification instance after {budget} attempts", attempts=budget)


def gen_classification_dataset(motif: str, count: int, seed: int, params: Optional[GenParams] = None) -> List[TaskInstance]:
    """
    Balanced classification dataset: even indices positive, negatives cycling
    through the structural, temporal and duration violations.
    """
    return generate_dataset(TaskKind.CLASSIFICATION, motif, count, seed, params=params)


def gen_detection_instance(
    motif: str,
    params: GenParams,
    index: int = 0,
    target: Optional[bool] = None,
    budget: int = DEFAULT_RETRY_BUDGET,
) -> TaskInstance:
    """
    A naturally generated graph labeled by the matcher.

    By default the first draw is kept, whatever its label. With ``target``
    set, the graph is re-drawn from independent streams until its label
    equals the target; such instances carry ``metadata["balanced"] = True``.

    Raises:
        GenerationError: If the target label is not reached within the budget
    """
    pattern = MotifCatalog()[motif].with_delta(params.window)
    tag = stream_tag(TaskKind.DETECTION.value, motif)
    attempts = budget if target is not None else 1
    for attempt in range(attempts):
        graph = gen_dynamic_graph(params, make_rng(params.seed, index, attempt, tag))
        label = detect(graph, pattern)
        if target is not None and label != target:
            continue
        metadata = {"attempts": attempt + 1, "balanced": target is not None}
        return TaskInstance(
            id=make_instance_id(TaskKind.DETECTION.value, motif, params.seed, index),
            task=TaskKind.DETECTION,
            graph=graph,
            motif=motif,
            query={"time_window": params.window},
            ground_truth={"label": label},
            gen=params,
            metadata=metadata,
        )
    raise GenerationError(
        f"No {motif} detection instance with label {target} after {budget} attempts", attempts=budget
    )


def construction_horizon(params: GenParams) -> int:
    """Largest timestamp an Add may carry in a generated graph."""
    return params.t_span - 1


def gen_construction_instance(
    motif: str, params: GenParams, index: int = 0, budget: int = DEFAULT_RETRY_BUDGET
) -> TaskInstance:
    """
    Background ER graph plus an implanted prefix missing only the final edge.

    The complete motif is verified absent, and the stored canonical completion
    is verified to create it.

    Raises:
        GenerationError: If the retry budget is exhausted
    """
    pattern = MotifCatalog()[motif].with_delta(params.window)
    if params.n < pattern.k:
        raise InvalidParamsError(f"{motif} needs at least {pattern.k} nodes, got n={params.n}")
    horizon = construction_horizon(params)
    tag = stream_tag(TaskKind.CONSTRUCTION.value, motif)
    for attempt in range(budget):
        rng = make_rng(params.seed, index, attempt, tag)
        background = _random_events(params, rng)
        times = _increasing_times(rng, pattern.l - 1, 0, horizon, pattern.window - 1)
        if times is None:
            continue
        nodes = [int(n) for n in rng.permutation(params.n)[: pattern.k]]
        prefix = _implant(pattern.edges[:-1], nodes, times, rng)
        graph = DynamicGraph(tuple(sorted(background + prefix, key=_event_order)))
        if detect(graph, pattern):
            continue
        completion = construct_completion(graph, pattern, horizon=horizon)
        if completion is None:
            continue
        return TaskInstance(
            id=make_instance_id(TaskKind.CONSTRUCTION.value, motif, params.seed, index),
            task=TaskKind.CONSTRUCTION,
            graph=graph,
            motif=motif,
            query={"time_window": params.window},
            ground_truth={"completion": [completion.to_record()]},
            gen=params,
            metadata={"attempts": attempt + 1, "implanted": [e.to_record() for e in prefix]},
        )
    raise GenerationError(f"No {motif} construction instance after {budget} attempts", attempts=budget)


def level2_catalog(windows: Optional[Dict[str, int]] = None) -> MotifCatalog:
    return MotifCatalog().with_windows(windows or LEVEL2_WINDOWS)


def gen_level2_instance(
    params: GenParams,
    task: TaskKind = TaskKind.MULTI_DETECT,
    index: int = 0,
    windows: Optional[Dict[str, int]] = None,
) -> TaskInstance:
    """
    One multi-motif graph with the detect, first-occurrence and count maps.
    """
    if not task.is_level2:
        raise InvalidParamsError(f"{task.value} is not a multi-motif task")
    catalog = level2_catalog(windows)
    graph = gen_dynamic_graph(params, make_rng(params.seed, index, 0, stream_tag("level2", None)))
    instance = TaskInstance(
        id=make_instance_id(task.value, None, params.seed, index),
        task=task,
        graph=graph,
        query=level2_query(catalog),
        gen=params,
    )
    instance.ground_truth = recompute_ground_truth(instance)
    return instance


def gen_level0_instance(
    task: TaskKind, params: GenParams, index: int = 0, budget: int = DEFAULT_RETRY_BUDGET
) -> TaskInstance:
    """
    One Level-0 instance.

    Sort Edge shuffles the events; When Link and Dislink queries a pair with
    both an Add and a Delete when one exists; What Edges queries a time in
    ``[0, T]``; Reverse Graph uses the graph as generated.
    """
    if task not in LEVEL0_TASKS:
        raise InvalidParamsError(f"{task.value} is not a Level-0 task")
    tag = stream_tag(task.value, None)
    rng = make_rng(params.seed, index, 0, tag)
    graph = gen_dynamic_graph(params, rng)
    query = {}
    if task is TaskKind.SORT_EDGE:
        graph = DynamicGraph(tuple(graph.events[i] for i in rng.permutation(len(graph))))
    elif task is TaskKind.WHEN_LINK:
        for attempt in range(1, budget):
            if any(not e.is_add for e in graph.events):
                break
            rng = make_rng(params.seed, index, attempt, tag)
            graph = gen_dynamic_graph(params, rng)
        deleted = sorted({e.pair for e in graph.events if not e.is_add})
        pairs = deleted or sorted({e.pair for e in graph.events})
        if not pairs:
            raise GenerationError("Level-0 graph has no events to query", attempts=budget)
        u, v = pairs[int(rng.integers(len(pairs)))]
        query = {"u": u, "v": v}
    elif task is TaskKind.WHAT_EDGES:
        query = {"t": int(rng.integers(0, params.t_span + 1))}
    instance = TaskInstance(
        id=make_instance_id(task.value, None, params.seed, index),
        task=task,
        graph=graph,
        query=query,
        gen=params,
    )
    instance.ground_truth = recompute_ground_truth(instance)
    return instance


def default_params(task: TaskKind, motif: Optional[str], seed: int) -> GenParams:
    """Settings-table parameters for a task and motif."""
    if task is TaskKind.CLASSIFICATION:
        row = CLASSIFICATION_SETTINGS[motif]
        return GenParams(n=row.n, m=row.m, t_span=row.t_span, window=row.window, del_prob=0.0, seed=seed)
    if task is TaskKind.DETECTION:
        row = DETECTION_SETTINGS[motif]
        return GenParams(n=row.n, t_span=row.t_span, window=row.window, seed=seed)
    if task is TaskKind.CONSTRUCTION:
        if motif not in CONSTRUCTION_SETTINGS:
            raise InvalidParamsError(
                f"No construction settings for {motif}; known: {', '.join(CONSTRUCTION_SETTINGS)}"
            )
        row = CONSTRUCTION_SETTINGS[motif]
        return GenParams(n=row.n, t_span=row.t_span, window=row.window, seed=seed)
    if task.is_level2:
        return GenParams(n=LEVEL2_N, t_span=LEVEL2_T_SPAN, window=max(LEVEL2_WINDOWS.values()), seed=seed)
    return GenParams(n=LEVEL0_N, t_span=LEVEL0_T_SPAN, window=LEVEL0_T_SPAN, seed=seed)


def generate_dataset(
    task: TaskKind,
    motif: Optional[str],
    count: int,
    seed: int,
    params: Optional[GenParams] = None,
    balance: bool = False,
    progress: bool = False,
) -> List[TaskInstance]:
    """
    Generate ``count`` instances of one task.

    Args:
        task: Task kind
        motif: Query motif for single-motif tasks
        count: Number of instances
        seed: Dataset seed
        params: Overrides the settings-table parameters
        balance: Force detection labels to alternate (even indices positive)
            instead of keeping the natural presence rate
        progress: Show a progress bar

    Returns:
        Instances in index order
    """
    if task in (TaskKind.CLASSIFICATION, TaskKind.DETECTION, TaskKind.CONSTRUCTION) and not motif:
        raise InvalidParamsError(f"{task.value} needs a motif")
    params = params if params is not None else default_params(task, motif, seed)
    indices = tqdm(range(count), desc=f"{task.value}:{motif or 'all'}", disable=not progress)
    instances = []
    for index in indices:
        if task is TaskKind.CLASSIFICATION:
            positive = index % 2 == 0
            violation = None if positive else VIOLATION_CYCLE[(index // 2) % len(VIOLATION_CYCLE)]
            instances.append(gen_classification_instance(motif, params, positive, violation, index=index))
        elif task is TaskKind.DETECTION:
            target = (index % 2 == 0) if balance else None
            instances.append(gen_detection_instance(motif, params, index=index, target=target))
        elif task is TaskKind.CONSTRUCTION:
            instances.append(gen_construction_instance(motif, params, index=index))
        elif task.is_level2:
            instances.append(gen_level2_instance(params, task, index=index))
        else:
            instances.append(gen_level0_instance(task, params, index=index))
    logger.debug("Generated %d %s instances (seed %d)", len(instances), task.value, seed)
    return instances
