"""
Benchmark generation for dymotif.
"""
from .ego import ego_sample, read_temporal_edges
from .generator import (
    apply_restore,
    default_params,
    gen_classification_dataset,
    gen_classification_instance,
    gen_construction_instance,
    gen_detection_instance,
    gen_dynamic_graph,
    gen_level0_instance,
    gen_level2_instance,
    generate_dataset,
    level2_catalog,
    same_shape,
)
from .instances import (
    LEVEL0_TASKS,
    LEVEL1_TASKS,
    LEVEL2_TASKS,
    TaskInstance,
    TaskKind,
    ViolationTag,
    read_instances,
    recompute_ground_truth,
    verify_instance,
    write_instances,
)
from .params import GenParams, make_rng, stream_tag
from .sweep import SweepRow, parameter_sweep, write_sweep_csv

__all__ = [
    "ego_sample",
    "read_temporal_edges",
    "apply_restore",
    "default_params",
    "gen_classification_dataset",
    "gen_classification_instance",
    "gen_construction_instance",
    "gen_detection_instance",
    "gen_dynamic_graph",
    "gen_level0_instance",
    "gen_level2_instance",
    "generate_dataset",
    "level2_catalog",
    "same_shape",
    "LEVEL0_TASKS",
    "LEVEL1_TASKS",
    "LEVEL2_TASKS",
    "TaskInstance",
    "TaskKind",
    "ViolationTag",
    "read_instances",
    "recompute_ground_truth",
    "verify_instance",
    "write_instances",
    "GenParams",
    "make_rng",
    "stream_tag",
    "SweepRow",
    "parameter_sweep",
    "write_sweep_csv",
]
