"""
Ego-graph sampling from real temporal edge lists.
"""
import logging
from typing import List, Optional, Tuple

import networkx as nx

from ..exceptions import InputError
from ..graph import DynamicGraph, EdgeEvent, Op
from .params import make_rng, stream_tag

logger = logging.getLogger(__name__)


def read_temporal_edges(path: str) -> List[Tuple[int, int, int]]:
    """
    Read whitespace-separated ``u v t`` lines; blank lines and ``#`` comments are skipped.

    Raises:
        InputError: If the file is unreadable, malformed or holds no edges
    """
    edges = []
    try:
        with open(path, "r", encoding="utf-8") as handle:
            for number, line in enumerate(handle, start=1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                fields = line.split()
                if len(fields) < 3:
                    raise InputError(f"{path}:{number}: expected 'u v t'")
                try:
                    u, v, t = (int(x) for x in fields[:3])
                except ValueError:
                    raise InputError(f"{path}:{number}: non-integer field")
                if u != v:
                    edges.append((u, v, t))
    except OSError as exc:
        raise InputError(f"Cannot read {path}: {exc.strerror or exc}") from exc
    if not edges:
        raise InputError(f"{path} holds no edges")
    return edges


def ego_sample(
    edge_file: str,
    center: Optional[int] = None,
    hops: int = 1,
    node_cap: int = 20,
    seed: int = 0,
) -> DynamicGraph:
    """
    Breadth-first ego-graph of a real temporal network.

    Nodes within ``hops`` of the center are kept nearest first (ties by node
    id) up to ``node_cap``; the events among them are relabeled densely from 0
    in order of original id and shifted so the earliest timestamp is 0.

    Args:
        edge_file: Path to ``u v t`` lines
        center: Center node; sampled with the seed when omitted
        hops: Neighborhood radius
        node_cap: Maximum number of kept nodes
        seed: Seed for center sampling

    Returns:
        Sampled graph with Add events only

    Raises:
        InputError: On unreadable input or an unknown center
    """
    edges = read_temporal_edges(edge_file)
    static = nx.Graph()
    static.add_edges_from((u, v) for u, v, _ in edges)
    if center is None:
        nodes = sorted(static.nodes)
        center = nodes[int(make_rng(seed, 0, 0, stream_tag("ego", None)).integers(len(nodes)))]
    elif center not in static:
        raise InputError(f"Center node {center} does not appear in {edge_file}")
    distances = nx.single_source_shortest_path_length(static, center, cutoff=hops)
    kept = {node for node, _ in sorted(distances.items(), key=lambda item: (item[1], item[0]))[:node_cap]}
    selected = sorted((t, u, v) for u, v, t in edges if u in kept and v in kept)
    if not selected:
        return DynamicGraph()
    relabel = {node: i for i, node in enumerate(sorted({n for _, u, v in selected for n in (u, v)}))}
    t0 = selected[0][0]
    logger.debug("Ego sample around %d: %d nodes, %d events", center, len(relabel), len(selected))
    return DynamicGraph(tuple(EdgeEvent(relabel[u], relabel[v], t - t0, Op.ADD) for t, u, v in selected))
