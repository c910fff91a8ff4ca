"""
Benchmark runs: solve instances concurrently, score them, and write results.

A run writes three files next to each other:

* ``<out>.jsonl``: one record per answered instance, appended as answers
  arrive (the main thread is the only writer)
* ``<out>.summary.csv``: ``task,motif,accuracy,avg_tokens``
* ``<out>.meta.json``: strategy, model, solver, scoring rules and counts

Rerunning on an existing ``<out>.jsonl`` skips ids that already have a
record without an error.
"""
import csv
import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from tqdm import tqdm

from ..api.client import LLMClient
from ..bench.instances import TaskInstance, TaskKind
from ..utils.helpers import dump_json_line
from .answers import ModelAnswer, parse_answer, payload_to_record
from .prompts import PromptBundle
from .scoring import SCORING_RULES, score_instance

logger = logging.getLogger(__name__)

SUMMARY_HEADER = ["task", "motif", "accuracy", "avg_tokens"]


def llm_complete(prompt: PromptBundle, client: LLMClient, task: TaskKind) -> ModelAnswer:
    """
    One chat completion for a rendered prompt, parsed for the task.

    Args:
        prompt: Rendered prompt (system + user message)
        client: Endpoint client
        task: Task the prompt asks

    Returns:
        ModelAnswer; usage counts stay None when the endpoint reports none

    Raises:
        EndpointError: On transport, credential or quota failures
    """
    completion = client.complete(prompt.system, [{"role": "user", "content": prompt.user}])
    return ModelAnswer(
        raw_text=completion.text,
        parsed=parse_answer(completion.text, task),
        usage=completion.usage,
        latency_ms=completion.latency_ms,
    )


class Solver:
    """
    Produces a ModelAnswer for an instance; never raises for endpoint errors.
    """
    kind = "solver"
    model = ""

    def solve(self, instance: TaskInstance) -> Tuple[ModelAnswer, Optional[str]]:
        """
        Returns:
            Tuple of (answer, route), route being ``direct``/``agent`` or None
        """
        raise NotImplementedError

    def describe(self) -> Dict[str, Any]:
        return {"solver": self.kind, "model": self.model}


def output_paths(out: str) -> Dict[str, str]:
    base = out[:-len(".jsonl")] if out.endswith(".jsonl") else out
    return {
        "records": f"{base}.jsonl",
        "summary": f"{base}.summary.csv",
        "meta": f"{base}.meta.json",
    }


def result_record(instance: TaskInstance, answer: ModelAnswer, route: Optional[str] = None) -> Dict[str, Any]:
    """The JSONL record of one answered instance."""
    score = score_instance(instance, answer.parsed)
    record = {
        "id": instance.id,
        "task": instance.task.value,
        "motif": instance.motif,
        "answer_raw": answer.raw_text,
        "parsed": payload_to_record(answer.parsed),
        "score": score.value,
        "prompt_tokens": answer.usage.input_tokens,
        "completion_tokens": answer.usage.output_tokens,
        "latency_ms": round(answer.latency_ms, 3),
        "route": route,
        "error": answer.error,
        "unresolved": answer.unresolved,
    }
    if score.breakdown:
        record["breakdown"] = score.breakdown
    if answer.transcript:
        record["transcript"] = answer.transcript
    return record


def read_results(path: str) -> Dict[str, Dict[str, Any]]:
    """
    Latest record per id of a result file; a torn trailing line is skipped.
    """
    records: Dict[str, Dict[str, Any]] = {}
    if not os.path.exists(path):
        return records
    with open(path, "r", encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError:
                logger.warning("%s:%d: skipping unreadable result line", path, number)
                continue
            if isinstance(record, dict) and "id" in record:
                records[str(record["id"])] = record
    return records


def _ensure_line_end(path: str):
    if not os.path.exists(path) or os.path.getsize(path) == 0:
        return
    with open(path, "rb+") as handle:
        handle.seek(-1, os.SEEK_END)
        if handle.read(1) != b"\n":
            handle.write(b"\n")


def _record_tokens(record: Dict[str, Any]) -> Optional[int]:
    counts = [record.get("prompt_tokens"), record.get("completion_tokens")]
    if all(c is None for c in counts):
        return None
    return sum(c or 0 for c in counts)


def summarize(records: Sequence[Dict[str, Any]]) -> List[Dict[str, Any]]:
    """
    One row per (task, motif) in order of first appearance.

    Errored records count with score 0; avg_tokens averages the records that
    report usage and is None when none do.
    """
    groups: Dict[Tuple[str, str], List[Dict[str, Any]]] = {}
    for record in records:
        key = (record["task"], record.get("motif") or "all")
        groups.setdefault(key, []).append(record)
    rows = []
    for (task, motif), items in groups.items():
        tokens = [t for t in (_record_tokens(r) for r in items) if t is not None]
        rows.append({
            "task": task,
            "motif": motif,
            "accuracy": sum(float(r.get("score") or 0.0) for r in items) / len(items),
            "avg_tokens": sum(tokens) / len(tokens) if tokens else None,
        })
    return rows


def write_summary_csv(path: str, rows: Sequence[Dict[str, Any]]):
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(SUMMARY_HEADER)
        for row in rows:
            avg = "" if row["avg_tokens"] is None else f"{row['avg_tokens']:.1f}"
            writer.writerow([row["task"], row["motif"], f"{row['accuracy']:.4f}", avg])


@dataclass
class RunReport:
    """
    Outcome of a benchmark run.
    """
    paths: Dict[str, str]
    total: int
    new_calls: int
    skipped: int
    errors: int
    rows: List[Dict[str, Any]] = field(default_factory=list)


class BenchmarkRunner:
    """
    Runs a solver over instances with a thread pool.
    """

    def __init__(self, solver: Solver, concurrency: int = 1, progress: bool = False, verbose: bool = False):
        """
        Args:
            solver: Produces the answers
            concurrency: Worker threads
            progress: Show a tqdm progress bar
            verbose: If True, log every answered instance at DEBUG level
        """
        if concurrency < 1:
            raise ValueError(f"concurrency must be at least 1, got {concurrency}")
        self.solver = solver
        self.concurrency = concurrency
        self.progress = progress
        self.verbose = verbose

    def _solve(self, instance: TaskInstance) -> Dict[str, Any]:
        answer, route = self.solver.solve(instance)
        return result_record(instance, answer, route)

    def run(self, instances: Sequence[TaskInstance], out: str,
            metadata: Optional[Dict[str, Any]] = None) -> RunReport:
        """
        Answer every instance without a usable record and write the outputs.

        Raises:
            OSError: If the result file cannot be written; records already
                written stay in place
        """
        paths = output_paths(out)
        os.makedirs(os.path.dirname(os.path.abspath(paths["records"])), exist_ok=True)
        existing = read_results(paths["records"])
        done = {rid for rid, record in existing.items() if not record.get("error")}
        pending = [inst for inst in instances if inst.id not in done]
        _ensure_line_end(paths["records"])
        logger.info("%d instances, %d already answered, %d to run", len(instances), len(instances) - len(pending), len(pending))

        errors = 0
        with open(paths["records"], "a", encoding="utf-8") as handle, \
                ThreadPoolExecutor(max_workers=self.concurrency) as pool:
            futures = [pool.submit(self._solve, inst) for inst in pending]
            bar = tqdm(total=len(futures), desc=self.solver.kind, disable=not self.progress)
            for future in as_completed(futures):
                record = future.result()
                handle.write(dump_json_line(record))
                handle.flush()
                existing[record["id"]] = record
                if record["error"]:
                    errors += 1
                if self.verbose:
                    logger.debug("%s score=%s route=%s error=%s", record["id"], record["score"],
                                 record["route"], record["error"])
                bar.update(1)
            bar.close()

        wanted = [existing[inst.id] for inst in instances if inst.id in existing]
        rows = summarize(wanted)
        write_summary_csv(paths["summary"], rows)
        meta = {
            **(metadata or {}),
            **self.solver.describe(),
            "scoring": {task.value: SCORING_RULES[task.value] for task in {inst.task for inst in instances}},
            "counts": {
                "instances": len(instances),
                "new_calls": len(pending),
                "skipped": len(instances) - len(pending),
                "errors": errors,
            },
        }
        with open(paths["meta"], "w", encoding="utf-8") as handle:
            json.dump(meta, handle, indent=2, sort_keys=True)
        return RunReport(paths=paths, total=len(instances), new_calls=len(pending),
                         skipped=len(instances) - len(pending), errors=errors, rows=rows)


def run_benchmark(instances: Sequence[TaskInstance], solver: Solver, out: str, concurrency: int = 1,
                  metadata: Optional[Dict[str, Any]] = None, progress: bool = False,
                  verbose: bool = False) -> RunReport:
    """
    Run a solver over instances and write records, summary and metadata.

    Args:
        instances: Instances to answer
        solver: Direct, agent, dispatcher or random-routing solver
        out: Output path prefix (``.jsonl`` suffix optional)
        concurrency: Worker threads
        metadata: Extra run metadata (strategy, endpoint settings); never credentials
        progress: Show a progress bar
        verbose: Log each answered instance

    Returns:
        RunReport
    """
    runner = BenchmarkRunner(solver, concurrency=concurrency, progress=progress, verbose=verbose)
    return runner.run(instances, out, metadata=metadata)
