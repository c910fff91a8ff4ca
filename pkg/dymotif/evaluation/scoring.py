"""
Per-task scoring of parsed answers against instance ground truths.

Scores always lie in [0, 1] and depend only on the instance and the payload.
"""
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, List

from ..bench.instances import TaskInstance, TaskKind
from ..graph import EdgeEvent, make_pair
from ..motifs import detect
from .answers import ParseFailure, Payload

# Recorded in run metadata
SCORING_RULES = {
    "classification": "1 if the Yes/No answer equals the label",
    "detection": "1 if the Yes/No answer equals the label",
    "construction": "1 if the answer is exactly one Add event and the motif is present after inserting it",
    "multi_detect": "max(0, TP - FP) / |present|; no motif present: 1 without false positives",
    "occurrence": "|exactly correct (name, time) pairs| / |present|; extra pairs are not penalized",
    "multi_count": "mean over present motifs of min(pred, gt) / gt",
    "level0_sort_edge": "1 if the same events in non-decreasing time order",
    "level0_when_link": "1 if the (link, dislink) pair is equal",
    "level0_what_edges": "1 if the set of pairs is equal",
    "level0_reverse_graph": "1 if equal under the chronological Add-before-Delete order",
}


@dataclass(frozen=True)
class Score:
    """
    Score of one answer.

    Attributes:
        task: Task kind
        value: Score in [0, 1]
        breakdown: Per-motif credit for multi-motif tasks
    """
    task: TaskKind
    value: float
    breakdown: Dict[str, float] = field(default_factory=dict)


def _bool(instance: TaskInstance, payload: Payload) -> Score:
    if not isinstance(payload, bool):
        return Score(instance.task, 0.0)
    return Score(instance.task, 1.0 if payload == bool(instance.ground_truth["label"]) else 0.0)


def _construction(instance: TaskInstance, payload: Payload) -> Score:
    if not isinstance(payload, list) or len(payload) != 1 or not isinstance(payload[0], EdgeEvent):
        return Score(instance.task, 0.0)
    event = payload[0]
    if not event.is_add or event.u == event.v:
        return Score(instance.task, 0.0)
    present = detect(instance.graph.with_events([event]), instance.pattern())
    return Score(instance.task, 1.0 if present else 0.0)


def _multi_detect(instance: TaskInstance, payload: Payload) -> Score:
    if not isinstance(payload, list):
        return Score(instance.task, 0.0)
    truth = [name for name, present in instance.ground_truth["detect"].items() if present]
    predicted = set(payload)
    tp = sum(1 for name in truth if name in predicted)
    fp = len(predicted - set(truth))
    breakdown = {name: 1.0 if name in predicted else 0.0 for name in truth}
    if not truth:
        return Score(instance.task, 1.0 if fp == 0 else 0.0, breakdown)
    return Score(instance.task, max(0, tp - fp) / len(truth), breakdown)


def _occurrence(instance: TaskInstance, payload: Payload) -> Score:
    if not isinstance(payload, dict):
        return Score(instance.task, 0.0)
    truth: Dict[str, int] = instance.ground_truth["first_occurrence"]
    breakdown = {name: 1.0 if payload.get(name) == t else 0.0 for name, t in truth.items()}
    if not truth:
        return Score(instance.task, 1.0)
    return Score(instance.task, sum(breakdown.values()) / len(truth), breakdown)


def _multi_count(instance: TaskInstance, payload: Payload) -> Score:
    if not isinstance(payload, dict):
        return Score(instance.task, 0.0)
    truth: Dict[str, int] = instance.ground_truth["count"]
    breakdown = {
        name: min(max(payload.get(name, 0), 0), gt) / gt for name, gt in truth.items()
    }
    if not truth:
        return Score(instance.task, 1.0)
    return Score(instance.task, sum(breakdown.values()) / len(truth), breakdown)


def _events(records: List[Any]) -> List[EdgeEvent]:
    return [EdgeEvent.from_record(record) for record in records]


def _chronological(events: List[EdgeEvent], add_first: bool = False) -> bool:
    keys = [(e.t, 0 if e.is_add else 1) if add_first else (e.t,) for e in events]
    return all(a <= b for a, b in zip(keys, keys[1:]))


def _sort_edge(instance: TaskInstance, payload: Payload) -> Score:
    if not isinstance(payload, list) or not all(isinstance(e, EdgeEvent) for e in payload):
        return Score(instance.task, 0.0)
    truth = _events(instance.ground_truth["events"])
    same = Counter(payload) == Counter(truth)
    return Score(instance.task, 1.0 if same and _chronological(payload) else 0.0)


def _reverse_graph(instance: TaskInstance, payload: Payload) -> Score:
    if not isinstance(payload, list) or not all(isinstance(e, EdgeEvent) for e in payload):
        return Score(instance.task, 0.0)
    truth = _events(instance.ground_truth["events"])

    def canonical(e: EdgeEvent):
        return (e.t, 0 if e.is_add else 1, e.pair)

    same = sorted(payload, key=canonical) == sorted(truth, key=canonical)
    return Score(instance.task, 1.0 if same and _chronological(payload, add_first=True) else 0.0)


def _when_link(instance: TaskInstance, payload: Payload) -> Score:
    if not isinstance(payload, tuple):
        return Score(instance.task, 0.0)
    truth = (instance.ground_truth["t_link"], instance.ground_truth["t_dislink"])
    return Score(instance.task, 1.0 if payload == truth else 0.0)


def _what_edges(instance: TaskInstance, payload: Payload) -> Score:
    if not isinstance(payload, list):
        return Score(instance.task, 0.0)
    truth = {make_pair(u, v) for u, v in instance.ground_truth["edges"]}
    predicted = {make_pair(u, v) for u, v in payload}
    return Score(instance.task, 1.0 if predicted == truth else 0.0)


_SCORERS = {
    TaskKind.CLASSIFICATION: _bool,
    TaskKind.DETECTION: _bool,
    TaskKind.CONSTRUCTION: _construction,
    TaskKind.MULTI_DETECT: _multi_detect,
    TaskKind.OCCURRENCE: _occurrence,
    TaskKind.MULTI_COUNT: _multi_count,
    TaskKind.SORT_EDGE: _sort_edge,
    TaskKind.WHEN_LINK: _when_link,
    TaskKind.WHAT_EDGES: _what_edges,
    TaskKind.REVERSE_GRAPH: _reverse_graph,
}


def score_instance(instance: TaskInstance, payload: Payload) -> Score:
    """
    Score a parsed answer.

    A ParseFailure, or a payload of the wrong shape for the task, scores 0.
    Construction answers are checked by insertion, so any single Add event
    that completes the motif earns full credit.

    Args:
        instance: The answered instance
        payload: Output of parse_answer

    Returns:
        The Score
    """
    if isinstance(payload, ParseFailure):
        return Score(instance.task, 0.0)
    return _SCORERS[instance.task](instance, payload)
