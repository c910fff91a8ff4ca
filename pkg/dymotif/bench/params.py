"""
Generation parameters and the seeded random streams built from them.
"""
import zlib
from dataclasses import asdict, dataclass, replace
from typing import Any, Dict, Optional

import numpy as np

from ..exceptions import InvalidParamsError
from .settings import DEFAULT_DEL_PROB, DEFAULT_EDGE_PROB


@dataclass(frozen=True)
class GenParams:
    """
    Parameters of one random dynamic graph.

    Attributes:
        n: Node count N
        p: Edge probability of the underlying ER graph
        t_span: Time span T
        window: Motif time window W
        del_prob: Probability that an edge also receives a Delete
        seed: PRNG seed
        m: Exact edge count, used by classification graphs
    """
    n: int
    p: float = DEFAULT_EDGE_PROB
    t_span: int = 5
    window: int = 5
    del_prob: float = DEFAULT_DEL_PROB
    seed: int = 0
    m: Optional[int] = None

    def __post_init__(self):
        if self.n < 0:
            raise InvalidParamsError(f"n must be non-negative, got {self.n}")
        if not 0.0 <= self.p <= 1.0:
            raise InvalidParamsError(f"p must lie in [0, 1], got {self.p}")
        if self.t_span < 1:
            raise InvalidParamsError(f"t_span must be at least 1, got {self.t_span}")
        if self.window < 1:
            raise InvalidParamsError(f"window must be at least 1, got {self.window}")
        if not 0.0 <= self.del_prob <= 1.0:
            raise InvalidParamsError(f"del_prob must lie in [0, 1], got {self.del_prob}")
        if self.seed < 0:
            raise InvalidParamsError(f"seed must be non-negative, got {self.seed}")
        if self.m is not None and self.m < 0:
            raise InvalidParamsError(f"m must be non-negative, got {self.m}")

    def evolve(self, **changes) -> "GenParams":
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "GenParams":
        try:
            return cls(**data)
        except TypeError as exc:
            raise InvalidParamsError(f"Bad generation parameters: {exc}") from exc


def stream_tag(task: str, motif: Optional[str]) -> int:
    """Stable 32-bit tag separating the streams of different tasks and motifs."""
    return zlib.crc32(f"{task}:{motif or ''}".encode("utf-8"))


def make_rng(seed: int, index: int = 0, attempt: int = 0, tag: int = 0) -> np.random.Generator:
    """
    Independent generator for one (seed, instance, attempt, stream) cell.
    """
    return np.random.default_rng(np.random.SeedSequence([seed, index, attempt, tag]))
