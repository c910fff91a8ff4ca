"""
Structural and sequence features of a dynamic graph used to predict query difficulty.
"""
from collections import defaultdict
from dataclasses import astuple, dataclass, fields
from typing import Dict, List, Tuple

import numpy as np

from ..graph import DynamicGraph, static_projection

FEATURE_NAMES: Tuple[str, ...] = ("num_edges", "cyclomatic", "ratio_eq_2", "ratio_ge_3", "edge_locality")


@dataclass(frozen=True)
class FeatureVector:
    """
    Attributes:
        num_edges: Number of events in the sequence, Adds and Deletes
        cyclomatic: E - N + P of the static projection
        ratio_eq_2: Share of projection nodes with exactly two neighbors
        ratio_ge_3: Share of projection nodes with three or more neighbors
        edge_locality: Mean over nodes with two or more neighbors of the
            population standard deviation of the sequence positions of
            their incident events
    """
    num_edges: int = 0
    cyclomatic: int = 0
    ratio_eq_2: float = 0.0
    ratio_ge_3: float = 0.0
    edge_locality: float = 0.0

    def as_list(self) -> List[float]:
        return [float(value) for value in astuple(self)]

    def to_dict(self) -> Dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def extract_features(graph: DynamicGraph) -> FeatureVector:
    """
    Compute the five difficulty features of a graph.

    Structural features come from the Add-event projection; num_edges and
    edge_locality read the full event sequence.

    Args:
        graph: Dynamic graph

    Returns:
        FeatureVector (all zeros for an empty graph)
    """
    if not graph.events:
        return FeatureVector()
    projection = static_projection(graph)
    neighbors: Dict[int, set] = defaultdict(set)
    for u, v in projection.edges:
        neighbors[u].add(v)
        neighbors[v].add(u)
    n = len(projection.nodes)
    degrees = np.array([len(neighbors[node]) for node in projection.nodes], dtype=int)

    positions: Dict[int, List[int]] = defaultdict(list)
    for index, event in enumerate(graph.events):
        positions[event.u].append(index)
        positions[event.v].append(index)
    core = [node for node in projection.nodes if len(neighbors[node]) >= 2]
    locality = float(np.mean([np.std(positions[node]) for node in core])) if core else 0.0

    return FeatureVector(
        num_edges=len(graph.events),
        cyclomatic=len(projection.edges) - n + projection.components,
        ratio_eq_2=float(np.count_nonzero(degrees == 2)) / n if n else 0.0,
        ratio_ge_3=float(np.count_nonzero(degrees >= 3)) / n if n else 0.0,
        edge_locality=locality,
    )
