"""
Evaluation package for dymotif: prompts, answer parsing, scoring and runs.

Solvers live in ``dymotif.evaluation.solvers``, which depends on the agent
package and is imported explicitly.
"""
from .answers import ModelAnswer, ParseFailure, parse_answer, payload_to_record
from .prompts import PromptBundle, Strategy, render_prompt
from .runner import BenchmarkRunner, RunReport, Solver, llm_complete, run_benchmark
from .scoring import SCORING_RULES, Score, score_instance

__all__ = [
    "BenchmarkRunner",
    "ModelAnswer",
    "ParseFailure",
    "PromptBundle",
    "RunReport",
    "SCORING_RULES",
    "Score",
    "Solver",
    "Strategy",
    "llm_complete",
    "parse_answer",
    "payload_to_record",
    "render_prompt",
    "run_benchmark",
    "score_instance",
]
