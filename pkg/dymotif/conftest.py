import threading
from typing import Callable, List, Optional, Sequence, Union

import pytest

from dymotif.api.client import LLMClient
from dymotif.api.models import Completion
from dymotif.config import EndpointConfig
from dymotif.tokens.models import TokenUsage

Reply = Union[str, Exception]


class ScriptedClient(LLMClient):
    """
    Endpoint stand-in answering from a script.

    ``script`` is either a list of replies consumed in order (the last one
    repeats) or a callable ``(system, messages) -> reply``. A reply that is
    an exception is raised instead of returned.
    """

    def __init__(self, script: Union[Sequence[Reply], Callable[[str, list], Reply]],
                 usage: Optional[TokenUsage] = TokenUsage(10, 5), model: str = "scripted"):
        super().__init__(EndpointConfig(model=model))
        self.script = script
        self.usage = usage
        self.calls: List[list] = []
        self._lock = threading.Lock()

    def _create(self, system, messages):
        with self._lock:
            self.calls.append(list(messages))
            position = len(self.calls) - 1
        if callable(self.script):
            reply = self.script(system, messages)
        else:
            reply = self.script[min(position, len(self.script) - 1)]
        if isinstance(reply, Exception):
            raise reply
        return Completion(text=reply, usage=self.usage or TokenUsage(), model=self.config.model)


@pytest.fixture
def scripted_client():
    return ScriptedClient
