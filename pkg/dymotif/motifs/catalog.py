"""
Motif patterns, the nine-motif catalog and the motif wire format.

A pattern is an ordered list of symbolic pairs over symbols ``0..k-1``; the
position of a pair in the list is its temporal rank.
"""
import re
from dataclasses import dataclass, replace
from typing import Any, Dict, Iterator, List, Mapping, Optional, Tuple

from typing_extensions import NotRequired, TypedDict

from ..exceptions import MotifDefinitionError

MOTIF_EDGES: Dict[str, Tuple[Tuple[int, int], ...]] = {
    "3-star": ((0, 1), (0, 2), (0, 3)),
    "triangle": ((0, 1), (1, 2), (2, 0)),
    "4-path": ((0, 1), (1, 2), (2, 3)),
    "4-cycle": ((0, 1), (1, 2), (2, 3), (3, 0)),
    "4-chordalcycle": ((0, 1), (1, 2), (2, 3), (3, 0), (0, 2)),
    "4-tailedtriangle": ((0, 1), (1, 2), (0, 3), (2, 0)),
    "4-clique": ((0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)),
    "bitriangle": ((0, 1), (1, 3), (3, 5), (5, 4), (4, 2), (2, 0)),
    "butterfly": ((0, 1), (0, 3), (2, 1), (2, 3)),
}

MOTIF_NAMES: Tuple[str, ...] = tuple(MOTIF_EDGES)


@dataclass(frozen=True)
class MotifPattern:
    """
    A (k, l, delta) temporal motif pattern.

    Attributes:
        name: Motif name
        edges: Symbolic pairs in temporal order
        delta: Time window; None until a task supplies one
    """
    name: str
    edges: Tuple[Tuple[int, int], ...]
    delta: Optional[int] = None

    def __post_init__(self):
        edges = tuple((int(a), int(b)) for a, b in self.edges)
        object.__setattr__(self, "edges", edges)
        if not edges:
            raise MotifDefinitionError(f"Motif {self.name!r} has no edges")
        if any(a == b for a, b in edges):
            raise MotifDefinitionError(f"Motif {self.name!r} has a self-loop")
        if len({frozenset(e) for e in edges}) != len(edges):
            raise MotifDefinitionError(f"Motif {self.name!r} repeats a pattern edge")
        symbols = {s for e in edges for s in e}
        if symbols != set(range(len(symbols))):
            raise MotifDefinitionError(f"Motif {self.name!r} must use symbols 0..k-1")
        seen = set(edges[0])
        for a, b in edges[1:]:
            if a not in seen and b not in seen:
                raise MotifDefinitionError(
                    f"Motif {self.name!r} violates connectivity at edge ({a}, {b})"
                )
            seen.update((a, b))
        if self.delta is not None and self.delta < 0:
            raise MotifDefinitionError(f"Motif {self.name!r} has a negative time window")

    @property
    def k(self) -> int:
        return len({s for e in self.edges for s in e})

    @property
    def l(self) -> int:
        return len(self.edges)

    @property
    def window(self) -> int:
        if self.delta is None:
            raise MotifDefinitionError(f"Motif {self.name!r} has no time window")
        return self.delta

    def with_delta(self, delta: int) -> "MotifPattern":
        return replace(self, delta=delta)

    def symbolic_edges(self) -> List[List[str]]:
        """Edges as ``["u0", "u1", "t0", "a"]`` tokens."""
        return [[f"u{a}", f"u{b}", f"t{i}", "a"] for i, (a, b) in enumerate(self.edges)]

    def describe(self) -> str:
        """``3-node, 3-edge, 5-temporal motif`` phrase used in prompts."""
        return f"{self.k}-node, {self.l}-edge, {self.window}-temporal motif"

    def symbolic_text(self) -> str:
        return "[" + ", ".join(f"({a}, {b}, {t}, {op})" for a, b, t, op in self.symbolic_edges()) + "]"


class MotifCatalog(Mapping):
    """
    Read-only map of motif name to pattern, with windows supplied per task.
    """

    def __init__(self, patterns: Optional[Dict[str, MotifPattern]] = None):
        if patterns is None:
            patterns = {name: MotifPattern(name, edges) for name, edges in MOTIF_EDGES.items()}
        self._patterns = dict(patterns)

    def __getitem__(self, name: str) -> MotifPattern:
        try:
            return self._patterns[name]
        except KeyError:
            raise MotifDefinitionError(f"Unknown motif {name!r}; known: {', '.join(self._patterns)}")

    def __iter__(self) -> Iterator[str]:
        return iter(self._patterns)

    def __len__(self) -> int:
        return len(self._patterns)

    def with_windows(self, windows: Mapping[str, int]) -> "MotifCatalog":
        """
        Catalog restricted to the named motifs, each carrying its window.

        Args:
            windows: Map of motif name to time window
        """
        return MotifCatalog({name: self[name].with_delta(int(delta)) for name, delta in windows.items()})

    def windows(self) -> Dict[str, Optional[int]]:
        return {name: pattern.delta for name, pattern in self._patterns.items()}


_SYMBOL_RE = re.compile(r"^\s*([uvUV])\s*(\d+)\s*$")
_RANK_RE = re.compile(r"^\s*[tT]\s*(\d+)\s*$")


class MotifRecord(TypedDict):
    """Wire form of one motif; ``name`` is omitted inside a name-keyed map."""
    edge_pattern: List[List[str]]
    time_window: int
    name: NotRequired[str]


def motif_to_record(pattern: MotifPattern) -> MotifRecord:
    """Wire record ``{"name", "edge_pattern", "time_window"}``."""
    return {"name": pattern.name, "edge_pattern": pattern.symbolic_edges(), "time_window": pattern.window}


def motif_from_record(record: Mapping[str, Any], name: Optional[str] = None) -> MotifPattern:
    """
    Parse a motif definition record.

    Node tokens use the ``u`` (or ``v``) prefix and rank tokens the ``t``
    prefix. Edges are ordered by rank token; an edge without one ranks by its
    position in the list.

    Raises:
        MotifDefinitionError: If the record is malformed
    """
    if not isinstance(record, Mapping):
        raise MotifDefinitionError(f"Motif {name!r}: definition must be an object")
    name = name or record.get("name")
    if not name:
        raise MotifDefinitionError("Motif record has no name")
    if "edge_pattern" not in record:
        raise MotifDefinitionError(f"Motif {name!r}: missing edge_pattern")
    if "time_window" not in record:
        raise MotifDefinitionError(f"Motif {name!r}: missing time_window")
    window = record["time_window"]
    if isinstance(window, str) and window.strip().isdigit():
        window = int(window)
    if isinstance(window, bool) or not isinstance(window, int) or window < 0:
        raise MotifDefinitionError(f"Motif {name!r}: time_window must be a non-negative integer")
    raw_edges = record["edge_pattern"]
    if not isinstance(raw_edges, (list, tuple)) or not raw_edges:
        raise MotifDefinitionError(f"Motif {name!r}: edge_pattern must be a non-empty list")
    ranked = []
    for position, item in enumerate(raw_edges):
        if not isinstance(item, (list, tuple)) or len(item) not in (2, 3, 4):
            raise MotifDefinitionError(f"Motif {name!r}: edge_pattern[{position}] must be a 4-element array")
        a = _symbol(name, position, item[0])
        b = _symbol(name, position, item[1])
        rank = position
        if len(item) >= 3:
            match = _RANK_RE.match(str(item[2]))
            if not match:
                raise MotifDefinitionError(f"Motif {name!r}: edge_pattern[{position}] has a bad rank token {item[2]!r}")
            rank = int(match.group(1))
        ranked.append((rank, position, (a, b)))
    ranked.sort()
    return MotifPattern(str(name), tuple(edge for _, _, edge in ranked), window)


def _symbol(name: str, position: int, token: Any) -> int:
    if isinstance(token, int) and not isinstance(token, bool):
        return token
    match = _SYMBOL_RE.match(str(token))
    if not match:
        raise MotifDefinitionError(f"Motif {name!r}: edge_pattern[{position}] has a bad node token {token!r}")
    return int(match.group(2))


def catalog_from_records(records: Mapping[str, Mapping[str, Any]]) -> MotifCatalog:
    """Catalog from a ``name -> {edge_pattern, time_window}`` map."""
    if not isinstance(records, Mapping):
        raise MotifDefinitionError("Motif definitions must map motif names to objects")
    return MotifCatalog({name: motif_from_record(body, name=name) for name, body in records.items()})


def catalog_to_records(catalog: MotifCatalog) -> Dict[str, MotifRecord]:
    return {
        name: {"edge_pattern": p.symbolic_edges(), "time_window": p.window}
        for name, p in catalog.items()
    }
