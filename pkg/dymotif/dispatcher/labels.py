"""
Labeled difficulty datasets built from direct-path run results.
"""
import csv
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from ..bench.instances import TaskInstance
from ..exceptions import InputError
from .features import FEATURE_NAMES, FeatureVector, extract_features

logger = logging.getLogger(__name__)

LABEL_HEADER = list(FEATURE_NAMES) + ["label"]
ID_COLUMNS = ["id", "motif"]


@dataclass(frozen=True)
class LabeledRow:
    """
    Features of one instance with its label: 1 (hard) iff the direct path
    answered incorrectly.
    """
    features: FeatureVector
    label: int
    instance_id: Optional[str] = None
    motif: Optional[str] = None


def build_label_dataset(instances: Iterable[TaskInstance],
                        results: Mapping[str, Mapping]) -> Tuple[List[LabeledRow], int]:
    """
    Label instances from direct-path result records.

    A score below 1 counts as incorrect. Instances without a record, or
    whose record reports an endpoint error, are skipped.

    Args:
        instances: Benchmark instances
        results: Result records by instance id

    Returns:
        Tuple of (rows, number skipped)
    """
    rows: List[LabeledRow] = []
    skipped = 0
    for instance in instances:
        record = results.get(instance.id)
        if record is None or record.get("error"):
            skipped += 1
            continue
        label = 0 if float(record.get("score") or 0.0) >= 1.0 else 1
        rows.append(LabeledRow(extract_features(instance.graph), label, instance.id, instance.motif))
    if skipped:
        logger.warning("Skipped %d instances without a usable direct-path record", skipped)
    return rows, skipped


def _format(value: float) -> str:
    return str(int(value)) if float(value).is_integer() else repr(float(value))


def write_label_csv(path: str, rows: Iterable[LabeledRow]) -> int:
    """Write rows with the label columns first, then the instance id and motif."""
    count = 0
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(LABEL_HEADER + ID_COLUMNS)
        for row in rows:
            writer.writerow(
                [_format(v) for v in row.features.as_list()] + [row.label, row.instance_id or "", row.motif or ""]
            )
            count += 1
    return count


def read_label_csv(path: str) -> List[LabeledRow]:
    """
    Read a label CSV.

    Both the bare six-column layout and the layout with trailing ``id`` and
    ``motif`` columns are accepted.

    Raises:
        InputError: If the file is unreadable, has the wrong header, or a bad row
    """
    try:
        handle = open(path, "r", encoding="utf-8", newline="")
    except OSError as exc:
        raise InputError(f"Cannot read {path}: {exc.strerror or exc}") from exc
    rows = []
    with handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header not in (LABEL_HEADER, LABEL_HEADER + ID_COLUMNS):
            raise InputError(f"{path}: expected header {','.join(LABEL_HEADER)}[,{','.join(ID_COLUMNS)}]")
        for number, values in enumerate(reader, start=2):
            if not values:
                continue
            try:
                numbers: Dict[str, float] = {name: float(v) for name, v in zip(FEATURE_NAMES, values)}
                label = int(values[len(FEATURE_NAMES)])
                extra = values[len(LABEL_HEADER):len(header)]
            except (ValueError, IndexError) as exc:
                raise InputError(f"{path}:{number}: bad row ({exc})") from exc
            features = FeatureVector(
                num_edges=int(numbers["num_edges"]),
                cyclomatic=int(numbers["cyclomatic"]),
                ratio_eq_2=numbers["ratio_eq_2"],
                ratio_ge_3=numbers["ratio_ge_3"],
                edge_locality=numbers["edge_locality"],
            )
            instance_id, motif = (list(extra) + ["", ""])[:2]
            rows.append(LabeledRow(features, label, instance_id or None, motif or None))
    return rows
