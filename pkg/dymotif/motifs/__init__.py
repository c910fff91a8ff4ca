"""
Temporal motif engine for dymotif.
Provides the motif catalog, the matcher and the multi-motif operations.
"""
from .catalog import (
    MOTIF_EDGES,
    MOTIF_NAMES,
    MotifCatalog,
    MotifPattern,
    MotifRecord,
    catalog_from_records,
    catalog_to_records,
    motif_from_record,
    motif_to_record,
)
from .matcher import (
    MotifInstance,
    classify_exact,
    construct_completion,
    count,
    detect,
    enumerate_instances,
    first_occurrence,
    is_valid_instance,
)
from .multi import multi_count, multi_detect, multi_first_occurrence

__all__ = [
    "MOTIF_EDGES",
    "MOTIF_NAMES",
    "MotifCatalog",
    "MotifPattern",
    "catalog_from_records",
    "catalog_to_records",
    "motif_from_record",
    "MotifRecord",
    "motif_to_record",
    "MotifInstance",
    "classify_exact",
    "construct_completion",
    "count",
    "detect",
    "enumerate_instances",
    "first_occurrence",
    "is_valid_instance",
    "multi_count",
    "multi_detect",
    "multi_first_occurrence",
]
