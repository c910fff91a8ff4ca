"""
Command-line interface for dymotif.

Every randomized command takes an explicit ``--seed``. Errors from the
library are printed as one line on stderr with exit code 1; argparse usage
errors exit with 2.
"""
import argparse
import csv
import logging
import sys
from typing import Iterator, List, Optional, Sequence, TextIO, Tuple

from .api.constants import API_KEY_ENV, DEFAULT_MODEL, DEFAULT_PROVIDER, PROVIDERS
from .bench import (
    GenParams,
    TaskInstance,
    TaskKind,
    default_params,
    ego_sample,
    generate_dataset,
    parameter_sweep,
    read_instances,
    write_instances,
    write_sweep_csv,
)
from .config import EndpointConfig, RunConfig
from .exceptions import DymotifException, InputError, InvalidParamsError
from .graph import DynamicGraph, graph_from_record, graph_to_record, parse_graph, serialize_graph
from .motifs import (
    MOTIF_NAMES,
    MotifCatalog,
    classify_exact,
    construct_completion,
    count,
    detect,
    first_occurrence,
)
from .utils.helpers import dump_json_line, iter_json_lines

logger = logging.getLogger(__name__)

LOG_FORMAT = "[%(levelname)s] %(name)s: %(message)s"
TASK_CHOICES = [kind.value for kind in TaskKind]
SOLVER_CHOICES = ["direct", "agent", "dispatcher", "random"]


def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _open_out(path: Optional[str]) -> TextIO:
    return open(path, "w", encoding="utf-8", newline="") if path else sys.stdout


# ---------------------------------------------------------------- graph input

def _add_graph_input(parser: argparse.ArgumentParser):
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--graph", help="JSONL file of graph records (or instance records)")
    source.add_argument("--events", help='Quadruplet list, e.g. "[(0, 1, 0, a), (1, 2, 1, a)]"')


def _iter_graphs(args) -> Iterator[DynamicGraph]:
    if args.events is not None:
        yield parse_graph(args.events)
        return
    for record in iter_json_lines(args.graph):
        yield graph_from_record(record["graph"] if "graph" in record else record)


def _add_motif_args(parser: argparse.ArgumentParser, window: bool = True):
    parser.add_argument("--motif", required=True, choices=MOTIF_NAMES)
    if window:
        parser.add_argument("--delta", type=int, required=True, help="Time window")


def _pattern(args):
    return MotifCatalog()[args.motif].with_delta(args.delta)


def cmd_detect(args) -> int:
    pattern = _pattern(args)
    for graph in _iter_graphs(args):
        print("Yes" if detect(graph, pattern) else "No")
    return 0


def cmd_classify(args) -> int:
    pattern = _pattern(args)
    for graph in _iter_graphs(args):
        print("Yes" if classify_exact(graph, pattern) else "No")
    return 0


def cmd_count(args) -> int:
    pattern = _pattern(args)
    for graph in _iter_graphs(args):
        print(count(graph, pattern))
    return 0


def cmd_first_occurrence(args) -> int:
    pattern = _pattern(args)
    for graph in _iter_graphs(args):
        print(first_occurrence(graph, pattern))
    return 0


def cmd_construct(args) -> int:
    pattern = _pattern(args)
    for graph in _iter_graphs(args):
        event = construct_completion(graph, pattern, horizon=args.horizon)
        print(f"[{event.to_text()}]" if event else "[]")
    return 0


# ---------------------------------------------------------------- generation

def _gen_params(args, task: TaskKind) -> GenParams:
    overrides = {
        key: value
        for key, value in (
            ("n", args.n), ("t_span", args.t), ("window", args.w),
            ("p", args.p), ("del_prob", args.del_prob), ("m", args.m),
        )
        if value is not None
    }
    try:
        base = default_params(task, args.motif, args.seed)
    except KeyError:
        if "n" not in overrides:
            raise InvalidParamsError(f"No settings for {task.value}/{args.motif}; pass --n, --t and --w")
        base = GenParams(n=overrides["n"], seed=args.seed)
    return base.evolve(**overrides)


def cmd_generate(args) -> int:
    task = TaskKind.parse(args.task)
    params = _gen_params(args, task)
    instances = generate_dataset(
        task, args.motif, args.count, args.seed, params=params,
        balance=args.balance, progress=args.progress,
    )
    if args.out:
        write_instances(args.out, instances)
        logger.info("Wrote %d instances to %s", len(instances), args.out)
    else:
        for instance in instances:
            sys.stdout.write(dump_json_line(instance.to_record()))
    return 0


def cmd_sweep(args) -> int:
    seeds = list(range(args.seed, args.seed + args.repeats))
    rows = parameter_sweep(args.motif, args.n, args.t, args.w, seeds, p=args.p, del_prob=args.del_prob)
    if args.out:
        write_sweep_csv(args.out, rows)
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["N", "T", "W", "mean_count"])
        for row in rows:
            writer.writerow((row.n, row.t_span, row.window, f"{row.mean_count:.6f}"))
    return 0


def cmd_ego_sample(args) -> int:
    graph = ego_sample(args.edges, center=args.center, hops=args.hops, node_cap=args.node_cap, seed=args.seed)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(dump_json_line(graph_to_record(graph)))
    else:
        print(serialize_graph(graph))
    return 0


# ---------------------------------------------------------------- runs

def _add_endpoint_args(parser: argparse.ArgumentParser, prefix: str = "", required: bool = True):
    dest = prefix.replace("-", "_")
    parser.add_argument(f"--{prefix}provider", dest=f"{dest}provider", choices=PROVIDERS,
                        default=DEFAULT_PROVIDER if required else None)
    parser.add_argument(f"--{prefix}endpoint", dest=f"{dest}endpoint", help="Endpoint base URL")
    parser.add_argument(f"--{prefix}model", dest=f"{dest}model", default=DEFAULT_MODEL if required else None)
    parser.add_argument(f"--{prefix}api-key-env", dest=f"{dest}api_key_env", default=API_KEY_ENV,
                        help="Environment variable holding the credential")


def _endpoint(args, prefix: str = "") -> Optional[EndpointConfig]:
    model = getattr(args, f"{prefix}model")
    endpoint = getattr(args, f"{prefix}endpoint")
    provider = getattr(args, f"{prefix}provider")
    if prefix and model is None and endpoint is None and provider is None:
        return None
    return EndpointConfig(
        provider=provider or args.provider,
        model=model or args.model,
        base_url=endpoint or (args.endpoint if prefix else None),
        api_key_env=getattr(args, f"{prefix}api_key_env"),
    )


def _add_run_args(parser: argparse.ArgumentParser):
    parser.add_argument("--instances", required=True, help="Instance JSONL file")
    parser.add_argument("--task", choices=TASK_CHOICES, help="Only run instances of this task")
    parser.add_argument("--motif", help="Only run instances of this motif")
    parser.add_argument("--out", required=True, help="Output prefix for .jsonl/.summary.csv/.meta.json")
    parser.add_argument("--concurrency", type=int, default=1)
    parser.add_argument("--max-steps", type=int, default=5, help="Agent step budget")
    parser.add_argument("--progress", action="store_true")
    _add_endpoint_args(parser)


def _select(instances: Sequence[TaskInstance], args) -> List[TaskInstance]:
    selected = [
        inst for inst in instances
        if (args.task is None or inst.task.value == args.task)
        and (args.motif is None or inst.motif == args.motif)
    ]
    if not selected:
        raise InputError("No instances match the --task/--motif filter")
    return selected


def _run_config(args, **extra) -> RunConfig:
    return RunConfig(
        endpoint=_endpoint(args),
        agent_endpoint=_endpoint(args, "agent_") if hasattr(args, "agent_model") else None,
        strategy=getattr(args, "strategy", "zero_shot"),
        concurrency=args.concurrency,
        max_steps=args.max_steps,
        instances_path=args.instances,
        out_path=args.out,
        **extra,
    )


def _execute(config: RunConfig, solver, instances: List[TaskInstance], args) -> int:
    from .evaluation.runner import run_benchmark

    report = run_benchmark(
        instances, solver, config.out_path, concurrency=config.concurrency,
        metadata={"config": config.to_dict()}, progress=args.progress, verbose=args.verbose,
    )
    for row in report.rows:
        avg = "" if row["avg_tokens"] is None else f"{row['avg_tokens']:.1f}"
        print(f"{row['task']},{row['motif']},{row['accuracy']:.4f},{avg}")
    logger.info("%d new calls, %d skipped, %d errors", report.new_calls, report.skipped, report.errors)
    return 0


def _direct_and_agent(config: RunConfig, args):
    from .api.client import create_client
    from .evaluation.solvers import AgentSolver, DirectSolver

    direct = DirectSolver(create_client(config.endpoint, verbose=args.verbose), strategy=config.strategy)
    agent_client = create_client(config.tool_endpoint, verbose=args.verbose)
    agent = AgentSolver(agent_client, max_steps=config.max_steps, verbose=args.verbose)
    return direct, agent


def cmd_bench_run(args) -> int:
    from .api.client import create_client
    from .dispatcher import DifficultyModel, DispatcherSolver
    from .evaluation.solvers import AgentSolver, DirectSolver, RandomRouteSolver

    if args.solver == "random" and args.seed is None:
        raise InvalidParamsError("--solver random needs --seed")
    if args.solver == "dispatcher" and not args.difficulty_model:
        raise InvalidParamsError("--solver dispatcher needs --difficulty-model")
    config = _run_config(
        args, seed=args.seed, fallback=args.fallback, random_route_rate=args.random_rate,
        model_path=args.difficulty_model, **({"threshold": args.threshold} if args.threshold is not None else {}),
    )
    instances = _select(read_instances(args.instances), args)
    if args.solver == "direct":
        solver = DirectSolver(create_client(config.endpoint, verbose=args.verbose), strategy=config.strategy)
    elif args.solver == "agent":
        solver = AgentSolver(create_client(config.tool_endpoint, verbose=args.verbose),
                             max_steps=config.max_steps, verbose=args.verbose)
    elif args.solver == "random":
        direct, agent = _direct_and_agent(config, args)
        solver = RandomRouteSolver(direct, agent, rate=config.random_route_rate, seed=config.seed)
    else:
        direct, agent = _direct_and_agent(config, args)
        model = DifficultyModel.load(args.difficulty_model)
        solver = DispatcherSolver(model, direct, agent, threshold=args.threshold, fallback=config.fallback)
    return _execute(config, solver, instances, args)


def cmd_agent_run(args) -> int:
    from .api.client import create_client
    from .evaluation.solvers import AgentSolver

    config = _run_config(args)
    instances = _select(read_instances(args.instances), args)
    solver = AgentSolver(create_client(config.endpoint, verbose=args.verbose),
                         max_steps=config.max_steps, verbose=args.verbose)
    return _execute(config, solver, instances, args)


# ---------------------------------------------------------------- dispatcher

def _feature_sources(args) -> Iterator[Tuple[str, DynamicGraph]]:
    if args.instances:
        for instance in read_instances(args.instances):
            yield instance.id, instance.graph
        return
    for index, graph in enumerate(_iter_graphs(args)):
        yield str(index), graph


def cmd_features_extract(args) -> int:
    from .dispatcher import FEATURE_NAMES, extract_features

    handle = _open_out(args.out)
    try:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["id"] + list(FEATURE_NAMES))
        for key, graph in _feature_sources(args):
            features = extract_features(graph)
            writer.writerow([key] + [features.to_dict()[name] for name in FEATURE_NAMES])
    finally:
        if handle is not sys.stdout:
            handle.close()
    return 0


def cmd_build_labels(args) -> int:
    from .dispatcher import build_label_dataset, write_label_csv
    from .evaluation.runner import output_paths, read_results

    results_path = output_paths(args.results)["records"]
    results = read_results(results_path)
    if not results:
        raise InputError(f"{results_path} holds no result records")
    rows, skipped = build_label_dataset(read_instances(args.instances), results)
    written = write_label_csv(args.out, rows)
    print(f"{written} rows written, {skipped} skipped")
    return 0


def cmd_train(args) -> int:
    from .dispatcher import BoostingParams, read_label_csv, train_classifier

    params = BoostingParams(
        n_estimators=args.n_estimators, max_depth=args.max_depth, learning_rate=args.learning_rate,
        reg_lambda=args.reg_lambda, min_child_weight=args.min_child_weight, gamma=args.gamma,
        test_fraction=args.test_fraction, seed=args.seed,
    )
    rows = read_label_csv(args.labels)
    if not rows:
        raise InputError(f"{args.labels} holds no rows")
    model = train_classifier(rows, params, threshold=args.threshold)
    model.save(args.out)
    accuracy = model.metadata["heldout_accuracy"]
    print(f"held-out accuracy: {'n/a' if accuracy is None else f'{accuracy:.4f}'}")
    return 0


def cmd_route(args) -> int:
    from .dispatcher import DifficultyModel, DispatcherSolver, extract_features, predict_difficulty

    model = DifficultyModel.load(args.difficulty_model)
    instances = _select(read_instances(args.instances), args)
    if args.decisions_only:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["id", "p_hard", "route"])
        for instance in instances:
            decision = predict_difficulty(model, extract_features(instance.graph), args.threshold)
            writer.writerow([instance.id, f"{decision.p_hard:.6f}", decision.route])
        return 0
    if not args.out:
        raise InvalidParamsError("dispatcher route needs --out unless --decisions-only is given")
    config = _run_config(
        args, fallback=args.fallback, model_path=args.difficulty_model,
        **({"threshold": args.threshold} if args.threshold is not None else {}),
    )
    direct, agent = _direct_and_agent(config, args)
    solver = DispatcherSolver(model, direct, agent, threshold=args.threshold, fallback=config.fallback)
    return _execute(config, solver, instances, args)


def cmd_tools_serve(args) -> int:
    from .tools.server import serve

    serve(args.host, args.port)
    return 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dymotif", description="Temporal motif benchmark toolkit")
    parser.add_argument("-v", "--verbose", action="store_true", help="Enable debug logging")
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    generate = commands.add_parser("generate", help="Generate benchmark instances")
    generate.add_argument("--task", required=True, choices=TASK_CHOICES)
    generate.add_argument("--motif", choices=MOTIF_NAMES)
    generate.add_argument("--n", type=int, help="Number of nodes")
    generate.add_argument("--t", type=int, help="Time span T")
    generate.add_argument("--w", type=int, help="Time window W")
    generate.add_argument("--p", type=float, help="Edge probability")
    generate.add_argument("--m", type=int, help="Exact number of edges")
    generate.add_argument("--del-prob", type=float)
    generate.add_argument("--count", type=int, required=True)
    generate.add_argument("--seed", type=int, required=True)
    generate.add_argument("--balance", action="store_true",
                          help="Re-draw detection graphs until labels alternate (exactly half positive)")
    generate.add_argument("--out", help="Instance JSONL file (stdout when omitted)")
    generate.add_argument("--progress", action="store_true")
    generate.set_defaults(func=cmd_generate)

    for name, func, window in (
        ("detect", cmd_detect, True),
        ("count", cmd_count, True),
        ("first-occurrence", cmd_first_occurrence, True),
        ("construct", cmd_construct, True),
        ("classify", cmd_classify, True),
    ):
        sub = commands.add_parser(name, help=f"{name.replace('-', ' ').capitalize()} a motif in graphs")
        _add_graph_input(sub)
        _add_motif_args(sub, window)
        if name == "construct":
            sub.add_argument("--horizon", type=int, help="Latest allowed completion time")
        sub.set_defaults(func=func)

    sweep = commands.add_parser("sweep", help="Mean motif count over an (N, T, W) grid")
    sweep.add_argument("--motif", required=True, choices=MOTIF_NAMES)
    sweep.add_argument("--n", type=_int_list, required=True, help="Comma-separated node counts")
    sweep.add_argument("--t", type=_int_list, required=True, help="Comma-separated time spans")
    sweep.add_argument("--w", type=_int_list, required=True, help="Comma-separated windows")
    sweep.add_argument("--p", type=float, default=0.3)
    sweep.add_argument("--del-prob", type=float, default=0.2)
    sweep.add_argument("--repeats", type=int, default=10, help="Seeds per cell, starting at --seed")
    sweep.add_argument("--seed", type=int, required=True)
    sweep.add_argument("--out", help="CSV file (stdout when omitted)")
    sweep.set_defaults(func=cmd_sweep)

    ego = commands.add_parser("ego-sample", help="Sample an ego-graph from a temporal edge file")
    ego.add_argument("--edges", required=True, help="File of 'u v t' lines")
    ego.add_argument("--center", type=int)
    ego.add_argument("--hops", type=int, default=1)
    ego.add_argument("--node-cap", type=int, default=20)
    ego.add_argument("--seed", type=int, required=True)
    ego.add_argument("--out", help="Graph JSONL file (quadruplet text on stdout when omitted)")
    ego.set_defaults(func=cmd_ego_sample)

    bench = commands.add_parser("bench", help="Benchmark runs").add_subparsers(dest="bench_command", metavar="ACTION")
    bench.required = True
    bench_run = bench.add_parser("run", help="Answer instances with an LLM and score them")
    _add_run_args(bench_run)
    bench_run.add_argument("--strategy", default="zero_shot",
                           choices=["zero_shot", "one_shot", "zero_shot_cot", "one_shot_cot"])
    bench_run.add_argument("--solver", default="direct", choices=SOLVER_CHOICES)
    bench_run.add_argument("--difficulty-model", help="Model file for --solver dispatcher")
    bench_run.add_argument("--threshold", type=float)
    bench_run.add_argument("--fallback", action="store_true")
    bench_run.add_argument("--random-rate", type=float, default=0.5)
    bench_run.add_argument("--seed", type=int)
    _add_endpoint_args(bench_run, prefix="agent-", required=False)
    bench_run.set_defaults(func=cmd_bench_run)

    agent = commands.add_parser("agent", help="Tool agent runs").add_subparsers(dest="agent_command", metavar="ACTION")
    agent.required = True
    agent_run = agent.add_parser("run", help="Answer instances with the tool agent and score them")
    _add_run_args(agent_run)
    agent_run.set_defaults(func=cmd_agent_run)

    features = commands.add_parser("features", help="Difficulty features").add_subparsers(
        dest="features_command", metavar="ACTION")
    features.required = True
    extract = features.add_parser("extract", help="Write difficulty features as CSV")
    source = extract.add_mutually_exclusive_group(required=True)
    source.add_argument("--instances", help="Instance JSONL file")
    source.add_argument("--graph", help="JSONL file of graph records")
    source.add_argument("--events", help="Quadruplet list")
    extract.add_argument("--out", help="CSV file (stdout when omitted)")
    extract.set_defaults(func=cmd_features_extract)

    dispatcher = commands.add_parser("dispatcher", help="Difficulty model and routing").add_subparsers(
        dest="dispatcher_command", metavar="ACTION")
    dispatcher.required = True
    labels = dispatcher.add_parser("build-labels", help="Label instances from a direct-path run")
    labels.add_argument("--instances", required=True)
    labels.add_argument("--results", required=True, help="Direct-path result JSONL (or its prefix)")
    labels.add_argument("--out", required=True, help="Label CSV file")
    labels.set_defaults(func=cmd_build_labels)

    train = dispatcher.add_parser("train", help="Train the difficulty model")
    train.add_argument("--labels", required=True, help="Label CSV file")
    train.add_argument("--out", required=True, help="Model file")
    train.add_argument("--seed", type=int, required=True)
    train.add_argument("--n-estimators", type=int, default=100)
    train.add_argument("--max-depth", type=int, default=3)
    train.add_argument("--learning-rate", type=float, default=0.3)
    train.add_argument("--reg-lambda", type=float, default=1.0)
    train.add_argument("--min-child-weight", type=float, default=1.0)
    train.add_argument("--gamma", type=float, default=0.0)
    train.add_argument("--test-fraction", type=float, default=0.2)
    train.add_argument("--threshold", type=float, default=0.5)
    train.set_defaults(func=cmd_train)

    route = dispatcher.add_parser("route", help="Route instances between the direct path and the agent")
    route.add_argument("--instances", required=True)
    route.add_argument("--difficulty-model", required=True)
    route.add_argument("--task", choices=TASK_CHOICES)
    route.add_argument("--motif")
    route.add_argument("--threshold", type=float)
    route.add_argument("--decisions-only", action="store_true", help="Print routes without calling endpoints")
    route.add_argument("--fallback", action="store_true")
    route.add_argument("--out")
    route.add_argument("--concurrency", type=int, default=1)
    route.add_argument("--max-steps", type=int, default=5)
    route.add_argument("--strategy", default="zero_shot",
                       choices=["zero_shot", "one_shot", "zero_shot_cot", "one_shot_cot"])
    route.add_argument("--progress", action="store_true")
    _add_endpoint_args(route)
    _add_endpoint_args(route, prefix="agent-", required=False)
    route.set_defaults(func=cmd_route)

    tools = commands.add_parser("tools", help="Motif tools").add_subparsers(dest="tools_command", metavar="ACTION")
    tools.required = True
    serve = tools.add_parser("serve", help="Serve the motif tools over HTTP")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8765)
    serve.set_defaults(func=cmd_tools_serve)
    return parser


def configure_logging(verbose: bool):
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING, format=LOG_FORMAT, force=True)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the CLI.

    Returns:
        Exit code: 0 on success, 1 on a library error, 2 on a usage error
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    configure_logging(args.verbose)
    try:
        return args.func(args)
    except DymotifException as exc:
        print(f"dymotif: error: {exc.message}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"dymotif: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
