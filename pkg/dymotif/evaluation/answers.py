"""
Answer extraction from model text.

Only the text after the last ``Answer:`` marker is read. Anything that cannot
be read is returned as a ParseFailure value, which scores 0; parsing never
raises.
"""
import re
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

from ..bench.instances import TaskKind
from ..graph import EdgeEvent, Op, make_pair
from ..motifs import MOTIF_NAMES
from ..tokens.models import TokenUsage


@dataclass(frozen=True)
class ParseFailure:
    """
    An answer that could not be read.

    Attributes:
        reason: Short description of what was missing
        text: The text that was examined
    """
    reason: str
    text: str = ""


Payload = Union[
    bool,
    List[EdgeEvent],
    List[str],
    Dict[str, int],
    Tuple[Optional[int], Optional[int]],
    List[Tuple[int, int]],
    ParseFailure,
]


@dataclass
class ModelAnswer:
    """
    A model's answer to one instance.

    Attributes:
        raw_text: Full response text (the final answer line for agent runs)
        parsed: Task-specific payload, or ParseFailure
        usage: Token usage; counts are None when the endpoint reported none
        latency_ms: Wall time of all endpoint calls
        error: Endpoint failure message; the instance counts as errored
        unresolved: The agent ran out of steps or could not be parsed
        transcript: Agent steps, empty for direct calls
    """
    raw_text: str
    parsed: Payload
    usage: TokenUsage = field(default_factory=TokenUsage)
    latency_ms: float = 0.0
    error: Optional[str] = None
    unresolved: bool = False
    transcript: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def failed(self) -> bool:
        return self.error is not None

    @classmethod
    def from_error(cls, error: str, usage: Optional[TokenUsage] = None, latency_ms: float = 0.0,
                   transcript: Optional[List[Dict[str, Any]]] = None) -> "ModelAnswer":
        return cls(
            raw_text="",
            parsed=ParseFailure("endpoint error"),
            usage=usage or TokenUsage(),
            latency_ms=latency_ms,
            error=error,
            transcript=transcript or [],
        )


_MARKER = re.compile(r"answer\s*:", re.IGNORECASE)
_Q = r"""['"]?"""
_INT = r"(\d+)"
_EVENT = re.compile(
    rf"[\(\[]\s*{_Q}{_INT}{_Q}\s*,\s*{_Q}{_INT}{_Q}\s*,\s*{_Q}{_INT}{_Q}\s*,\s*{_Q}([ad]){_Q}\s*[\)\]]",
    re.IGNORECASE,
)
_PAIR = re.compile(rf"[\(\[]\s*{_Q}{_INT}{_Q}\s*,\s*{_Q}{_INT}{_Q}\s*[\)\]]")
_OPT_INT = r"(\d+|none|null)"
_OPT_PAIR = re.compile(rf"[\(\[]\s*{_OPT_INT}\s*,\s*{_OPT_INT}\s*[\)\]]", re.IGNORECASE)
_EMPTY = re.compile(r"\[\s*\]|\bnone\b|\bno motifs?\b", re.IGNORECASE)
# Longest names first so that alternation prefers e.g. 4-tailedtriangle
_NAME_ALT = "|".join(re.escape(name) for name in sorted(MOTIF_NAMES, key=len, reverse=True))
_NAME = re.compile(rf"(?<![\w-])({_NAME_ALT})(?![\w-])", re.IGNORECASE)
_NAME_INT = re.compile(
    rf"(?:[\(\[]\s*{_Q}({_NAME_ALT}){_Q}\s*,\s*{_INT}\s*[\)\]])|(?:(?<![\w-])({_NAME_ALT}){_Q}\s*[:=]\s*{_INT})",
    re.IGNORECASE,
)


def answer_segment(raw: str) -> Optional[str]:
    """Text after the last ``Answer:`` marker, or None if there is none."""
    matches = list(_MARKER.finditer(raw or ""))
    if not matches:
        return None
    return raw[matches[-1].end():].strip()


def _canonical_name(text: str) -> str:
    lowered = text.lower()
    for name in MOTIF_NAMES:
        if name.lower() == lowered:
            return name
    return text


def _parse_yes_no(segment: str) -> Payload:
    words = re.findall(r"[A-Za-z]+", segment)
    if not words:
        return ParseFailure("no yes/no token", segment)
    first = words[0].lower()
    if first in ("yes", "true"):
        return True
    if first in ("no", "false"):
        return False
    return ParseFailure(f"expected Yes or No, got {words[0]!r}", segment)


def _parse_events(segment: str) -> Payload:
    events = [
        EdgeEvent(int(u), int(v), int(t), Op(op.lower()))
        for u, v, t, op in _EVENT.findall(segment)
    ]
    if events or re.search(r"\[\s*\]", segment):
        return events
    return ParseFailure("no (u, v, t, op) tuples", segment)


def _parse_names(segment: str) -> Payload:
    names: List[str] = []
    for match in _NAME.finditer(segment):
        name = _canonical_name(match.group(1))
        if name not in names:
            names.append(name)
    if names or _EMPTY.search(segment):
        return names
    return ParseFailure("no motif names", segment)


def _parse_name_ints(segment: str) -> Payload:
    result: Dict[str, int] = {}
    for match in _NAME_INT.finditer(segment):
        name = match.group(1) or match.group(3)
        value = match.group(2) or match.group(4)
        result.setdefault(_canonical_name(name), int(value))
    if result or _EMPTY.search(segment):
        return result
    return ParseFailure("no (name, integer) tuples", segment)


def _parse_optional_pair(segment: str) -> Payload:
    match = _OPT_PAIR.search(segment)
    if not match:
        return ParseFailure("no (link, dislink) tuple", segment)

    def value(token: str) -> Optional[int]:
        return None if token.lower() in ("none", "null") else int(token)

    return (value(match.group(1)), value(match.group(2)))


def _parse_pairs(segment: str) -> Payload:
    pairs = [make_pair(int(u), int(v)) for u, v in _PAIR.findall(segment)]
    if pairs or re.search(r"\[\s*\]", segment):
        return pairs
    return ParseFailure("no (u, v) pairs", segment)


_PARSERS: Dict[TaskKind, Callable[[str], Payload]] = {
    TaskKind.CLASSIFICATION: _parse_yes_no,
    TaskKind.DETECTION: _parse_yes_no,
    TaskKind.CONSTRUCTION: _parse_events,
    TaskKind.MULTI_DETECT: _parse_names,
    TaskKind.OCCURRENCE: _parse_name_ints,
    TaskKind.MULTI_COUNT: _parse_name_ints,
    TaskKind.SORT_EDGE: _parse_events,
    TaskKind.WHEN_LINK: _parse_optional_pair,
    TaskKind.WHAT_EDGES: _parse_pairs,
    TaskKind.REVERSE_GRAPH: _parse_events,
}


def parse_answer(raw: str, task: TaskKind) -> Payload:
    """
    Parse a model response for a task.

    Args:
        raw: Full response text
        task: Task the response answers

    Returns:
        bool for Yes/No tasks, a list of EdgeEvent for edge-list answers, a
        list of names for Multi-Motif Detection, a name -> int map for the
        (name, integer) answers, an optional-int pair for When Link and
        Dislink, a list of pairs for What Edges, or ParseFailure.
    """
    segment = answer_segment(raw)
    if segment is None:
        return ParseFailure("no 'Answer:' marker", raw or "")
    return _PARSERS[TaskKind(task)](segment)


def payload_to_record(payload: Payload) -> Any:
    """JSON form of a parsed payload for result records."""
    if isinstance(payload, ParseFailure):
        return {"parse_failure": payload.reason}
    if isinstance(payload, bool) or isinstance(payload, dict):
        return payload
    if isinstance(payload, tuple):
        return list(payload)
    return [item.to_record() if isinstance(item, EdgeEvent) else
            list(item) if isinstance(item, tuple) else item for item in payload]
