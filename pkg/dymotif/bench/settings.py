"""
Generation settings for the benchmark tasks.
"""
from typing import Dict, NamedTuple


class ClassificationRow(NamedTuple):
    n: int
    m: int
    t_span: int
    window: int


class SettingsRow(NamedTuple):
    n: int
    t_span: int
    window: int


# Classification graphs are sized to the motif: N nodes, M edges
CLASSIFICATION_SETTINGS: Dict[str, ClassificationRow] = {
    "3-star": ClassificationRow(4, 3, 5, 5),
    "triangle": ClassificationRow(3, 3, 5, 5),
    "4-path": ClassificationRow(4, 3, 5, 5),
    "4-cycle": ClassificationRow(4, 4, 5, 5),
    "4-chordalcycle": ClassificationRow(4, 5, 10, 10),
    "4-tailedtriangle": ClassificationRow(4, 4, 5, 5),
    "4-clique": ClassificationRow(4, 6, 10, 10),
    "bitriangle": ClassificationRow(6, 6, 10, 10),
    "butterfly": ClassificationRow(4, 4, 5, 5),
}

# Detection graphs at p=0.3; natural presence rates vary by motif
DETECTION_SETTINGS: Dict[str, SettingsRow] = {
    "3-star": SettingsRow(10, 5, 3),
    "triangle": SettingsRow(10, 5, 4),
    "4-path": SettingsRow(10, 5, 3),
    "4-cycle": SettingsRow(15, 10, 6),
    "4-chordalcycle": SettingsRow(20, 15, 14),
    "4-tailedtriangle": SettingsRow(15, 10, 7),
    "4-clique": SettingsRow(35, 30, 27),
    "bitriangle": SettingsRow(25, 20, 14),
    "butterfly": SettingsRow(15, 10, 6),
}

CONSTRUCTION_SETTINGS: Dict[str, SettingsRow] = {
    "4-cycle": SettingsRow(10, 10, 5),
    "4-tailedtriangle": SettingsRow(10, 10, 5),
    "4-chordalcycle": SettingsRow(10, 15, 10),
    "4-clique": SettingsRow(10, 15, 10),
    "bitriangle": SettingsRow(10, 15, 10),
}

LEVEL2_N = 20
LEVEL2_T_SPAN = 15
LEVEL2_WINDOWS: Dict[str, int] = {
    "3-star": 3,
    "triangle": 3,
    "4-path": 3,
    "4-cycle": 6,
    "4-chordalcycle": 14,
    "4-tailedtriangle": 6,
    "4-clique": 15,
    "bitriangle": 15,
    "butterfly": 6,
}

LEVEL0_N = 10
LEVEL0_T_SPAN = 5

DEFAULT_EDGE_PROB = 0.3
DEFAULT_DEL_PROB = 0.2

# Attempts per instance before a generator gives up
DEFAULT_RETRY_BUDGET = 200

# Motifs the dispatcher's difficulty model is trained over
DISPATCHER_MOTIFS = ("3-star", "4-cycle", "4-clique", "4-chordalcycle", "bitriangle")
