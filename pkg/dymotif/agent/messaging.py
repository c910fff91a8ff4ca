"""
Parsing of Thought / Action / Action Input / Final Answer blocks.
"""
import ast
import json
import re
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional

_FINAL_RE = re.compile(r"final\s+answer\s*:", re.IGNORECASE)
_THOUGHT_RE = re.compile(r"thought\s*:", re.IGNORECASE)
_ACTION_RE = re.compile(r"action\s*:\s*[`*\"']*([A-Za-z_][\w-]*)", re.IGNORECASE)
_INPUT_RE = re.compile(r"action\s+input\s*:", re.IGNORECASE)
_BARE_KEY_RE = re.compile(r"([{,]\s*)([A-Za-z_][\w-]*)(\s*:)")
_BARE_VALUE_RE = re.compile(r"([\[,]\s*)([A-Za-z_][\w-]*)(\s*[,\]])")
_LITERALS = {"true", "false", "null"}


@dataclass
class ReactStep:
    """
    One parsed model turn.

    Exactly one of ``action`` and ``final_answer`` is set, unless ``error``
    reports that neither could be read.
    """
    thought: str = ""
    action: Optional[str] = None
    action_input: Optional[Any] = None
    final_answer: Optional[str] = None
    observation: Optional[str] = None
    error: Optional[str] = None

    @property
    def is_final(self) -> bool:
        return self.final_answer is not None

    @property
    def is_failure(self) -> bool:
        return self.error is not None

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _thought_before(text: str, end: int) -> str:
    matches = list(_THOUGHT_RE.finditer(text, 0, end))
    if not matches:
        return text[:end].strip()
    body = text[matches[-1].end():end]
    return body.split("\n\n")[0].strip() if body else ""


def extract_braced(text: str, start: int = 0) -> Optional[str]:
    """
    The first balanced ``{...}`` block at or after ``start``, or None.
    Braces inside quoted strings are ignored.
    """
    begin = text.find("{", start)
    if begin < 0:
        return None
    depth = 0
    quote = None
    escaped = False
    for i in range(begin, len(text)):
        ch = text[i]
        if quote:
            if escaped:
                escaped = False
            elif ch == "\\":
                escaped = True
            elif ch == quote:
                quote = None
        elif ch in ("'", '"'):
            quote = ch
        elif ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
            if depth == 0:
                return text[begin:i + 1]
    return None


def _quote_bare(match: "re.Match") -> str:
    word = match.group(2)
    if word.lower() in _LITERALS:
        return match.group(0)
    return f'{match.group(1)}"{word}"{match.group(3)}'


def parse_action_input(block: str) -> Optional[Any]:
    """
    Decode a dictionary literal written as JSON, as a Python literal, or
    with bare identifiers.
    """
    try:
        return json.loads(block)
    except json.JSONDecodeError:
        pass
    try:
        return ast.literal_eval(block)
    except (ValueError, SyntaxError):
        pass
    repaired = _BARE_KEY_RE.sub(_quote_bare, block)
    # twice, since adjacent bare values share a separator
    for _ in range(2):
        repaired = _BARE_VALUE_RE.sub(_quote_bare, repaired)
    repaired = repaired.replace("'", '"')
    try:
        return json.loads(repaired)
    except json.JSONDecodeError:
        return None


def parse_react_step(text: str) -> ReactStep:
    """
    Parse the last Thought/Action/Action Input or Final Answer block.

    A Final Answer wins over an Action in the same text.

    Args:
        text: Model output

    Returns:
        The ReactStep; ``error`` is set when no block could be read
    """
    text = text or ""
    finals = list(_FINAL_RE.finditer(text))
    if finals:
        last = finals[-1]
        answer = text[last.end():].strip()
        return ReactStep(thought=_thought_before(text, last.start()), final_answer=answer)

    actions = list(_ACTION_RE.finditer(text))
    if not actions:
        return ReactStep(thought=text.strip(), error="no Action or Final Answer found")
    action = actions[-1]
    step = ReactStep(thought=_thought_before(text, action.start()), action=action.group(1))
    marker = _INPUT_RE.search(text, action.end())
    if not marker:
        step.error = "missing Action Input"
        return step
    block = extract_braced(text, marker.end())
    if block is None:
        step.error = "Action Input must be a dictionary"
        return step
    decoded = parse_action_input(block)
    if not isinstance(decoded, dict):
        step.error = "Action Input is not a readable dictionary"
        return step
    step.action_input = decoded
    return step
