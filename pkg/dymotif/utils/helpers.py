"""
Common utility functions for dymotif.
"""
import json
import os
from typing import Any, Dict, Iterable, Iterator, Optional

from ..exceptions import InputError


def make_instance_id(task: str, motif: Optional[str], seed: int, index: int) -> str:
    """
    Build a stable instance ID.

    Args:
        task: Task kind value
        motif: Motif name, or None for multi-motif and Level-0 tasks
        seed: Dataset seed
        index: Position of the instance in its dataset

    Returns:
        ID such as ``detection-triangle-s7-0003``
    """
    return f"{task}-{motif or 'all'}-s{seed}-{index:04d}"


def dump_json_line(record: Dict[str, Any]) -> str:
    """Compact JSON with insertion-ordered keys, terminated by a newline."""
    return json.dumps(record, separators=(", ", ": "), ensure_ascii=False) + "\n"


def iter_json_lines(path: str) -> Iterator[Dict[str, Any]]:
    """
    Yield one object per non-blank line of a JSONL file.

    Raises:
        InputError: If the file cannot be read or a line is not a JSON object
    """
    try:
        handle = open(path, "r", encoding="utf-8")
    except OSError as exc:
        raise InputError(f"Cannot read {path}: {exc.strerror or exc}") from exc
    with handle:
        for number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise InputError(f"{path}:{number}: invalid JSON ({exc.msg})") from exc
            if not isinstance(record, dict):
                raise InputError(f"{path}:{number}: expected a JSON object")
            yield record


def write_json_lines(path: str, records: Iterable[Dict[str, Any]], append: bool = False) -> int:
    """Write records as JSONL; returns the number of lines written."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    written = 0
    with open(path, "a" if append else "w", encoding="utf-8") as handle:
        for record in records:
            handle.write(dump_json_line(record))
            written += 1
    return written
