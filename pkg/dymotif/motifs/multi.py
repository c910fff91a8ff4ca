"""
Multi-motif operations: the base matcher applied per catalog entry.
"""
from typing import Dict

from ..graph import DynamicGraph
from .catalog import MotifCatalog
from .matcher import count, detect, first_occurrence


def multi_detect(graph: DynamicGraph, catalog: MotifCatalog) -> Dict[str, bool]:
    """Presence of every catalog motif, in catalog order."""
    return {name: detect(graph, pattern) for name, pattern in catalog.items()}


def multi_first_occurrence(graph: DynamicGraph, catalog: MotifCatalog) -> Dict[str, int]:
    """First occurrence time per present motif; absent motifs are omitted."""
    result = {}
    for name, pattern in catalog.items():
        t = first_occurrence(graph, pattern)
        if t is not None:
            result[name] = t
    return result


def multi_count(graph: DynamicGraph, catalog: MotifCatalog) -> Dict[str, int]:
    """Instance count per present motif; absent motifs are omitted."""
    result = {}
    for name, pattern in catalog.items():
        n = count(graph, pattern)
        if n:
            result[name] = n
    return result
