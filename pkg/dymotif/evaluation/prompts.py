"""
Prompt rendering from the text templates shipped with the package.

Each template file holds ``### section`` blocks; placeholders use
``string.Template`` syntax (``$graph``) so graph text never needs escaping.
"""
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from importlib import resources
from string import Template
from typing import Dict, List, Tuple

from ..bench.instances import TaskInstance
from ..exceptions import InputError
from ..graph import serialize_graph


class Strategy(str, Enum):
    """Prompting strategy."""
    ZERO_SHOT = "zero_shot"
    ONE_SHOT = "one_shot"
    ZERO_SHOT_COT = "zero_shot_cot"
    ONE_SHOT_COT = "one_shot_cot"

    @property
    def one_shot(self) -> bool:
        return self in (Strategy.ONE_SHOT, Strategy.ONE_SHOT_COT)

    @property
    def cot(self) -> bool:
        return self in (Strategy.ZERO_SHOT_COT, Strategy.ONE_SHOT_COT)


@dataclass(frozen=True)
class PromptBundle:
    """
    A rendered prompt.

    Attributes:
        system: Instruction components (graph, motif, motif list, task, answer format)
        user: Exemplar (one-shot strategies) and the question
        components: Ordered ``(name, text)`` pairs the two texts were assembled from
    """
    system: str
    user: str
    components: Tuple[Tuple[str, str], ...]

    @property
    def text(self) -> str:
        """Single-message form of the prompt."""
        return f"{self.system}\n\n{self.user}"


def parse_sections(text: str) -> Dict[str, str]:
    """Split ``### name`` blocks into a name -> body map."""
    sections: Dict[str, List[str]] = {}
    current = None
    for line in text.splitlines():
        if line.startswith("### "):
            current = line[4:].strip()
            sections[current] = []
        elif current is not None:
            sections[current].append(line)
    return {name: "\n".join(lines).strip() for name, lines in sections.items()}


@lru_cache(maxsize=None)
def load_template(name: str) -> Dict[str, str]:
    """
    Load a template file from the package's ``templates`` directory.

    Raises:
        InputError: If no template exists under that name
    """
    resource = resources.files("dymotif.evaluation").joinpath("templates", f"{name}.txt")
    if not resource.is_file():
        raise InputError(f"No prompt template for {name!r}")
    return parse_sections(resource.read_text(encoding="utf-8"))


def _fill(text: str, values: Dict[str, str]) -> str:
    return Template(text).safe_substitute(values)


def motif_line(name: str, description: str, edges: str) -> str:
    return f"{name}: a {description} with the edges {edges}"


def render_prompt(instance: TaskInstance, strategy: Strategy = Strategy.ZERO_SHOT) -> PromptBundle:
    """
    Render the prompt for an instance.

    Component order is fixed: graph instruction, motif instruction, motif
    list (multi-motif tasks), task instruction, answer format, then exemplar
    and question. Level-0 prompts carry no motif components.

    Args:
        instance: Benchmark instance
        strategy: Prompting strategy

    Returns:
        The rendered PromptBundle

    Raises:
        InputError: If the task has no template
    """
    strategy = Strategy(strategy)
    shared = load_template("shared")
    template = load_template(instance.task.value)
    values = {"graph": serialize_graph(instance.graph)}
    values.update({key: str(value) for key, value in instance.query.items() if not isinstance(value, dict)})

    components: List[Tuple[str, str]] = [("dyg", shared["dyg"])]
    if not instance.task.is_level0:
        motif_text = shared["motif"]
        if strategy.cot:
            motif_text = f"{motif_text} {shared['motif_cot']}"
        components.append(("motif", motif_text))
    if instance.task.is_level2:
        lines = [
            motif_line(name, pattern.describe(), pattern.symbolic_text())
            for name, pattern in instance.catalog().items()
        ]
        components.append(("motif_list", _fill(shared["motif_list"], {"motif_lines": "\n".join(lines)})))
    elif instance.motif is not None:
        pattern = instance.pattern()
        values.update(
            motif_name=pattern.name, motif_desc=pattern.describe(), motif_edges=pattern.symbolic_text()
        )
    components.append(("task", template["task"]))
    components.append(("answer", template["answer"]))
    system = "\n\n".join(text for _, text in components)

    user_parts: List[Tuple[str, str]] = []
    if strategy.one_shot:
        example = template["example_cot" if strategy.cot else "example"]
        user_parts.append(("example", f"{shared['example_intro']}\n{example}"))
    question = f"{shared['question_intro']}\n{_fill(template['question'], values)}"
    if strategy.cot:
        question = f"{question}\n{shared['cot_cue']}"
    user_parts.append(("question", question))
    user = "\n\n".join(text for _, text in user_parts)
    return PromptBundle(system=system, user=user, components=tuple(components + user_parts))
