"""
Command-line entrypoint: structured logging, subcommands for single MDS /
seeding / diffusion runs, network generation, experiment grids and reports,
and graceful shutdown of a running grid on SIGINT/SIGTERM.
"""

import argparse
import asyncio
import json
import logging
import os
import signal
import sys
from contextlib import suppress
from typing import Dict, List, Optional, Sequence

from .infmax import settings
from .infmax.diffusion import MltmParams, gamma, lambda_, simulate
from .infmax.errors import InfmaxError
from .infmax.harness import (
    aggregate_heatmap,
    delta_report,
    mds_report,
    pair_records,
    run_grid_async,
    select_stratum,
    similarity_report,
)
from .infmax.io.multiplex import dump_multiplex, read_network
from .infmax.io.plan import PRESETS, ExperimentPlan, read_plan
from .infmax.io.records import (
    dump_mds_draws,
    dump_seed_sets,
    load_mds_draws,
    load_seed_sets,
    read_records_csv,
    read_text,
    write_bytes_atomic,
    write_records_csv,
    write_text_atomic,
)
from .infmax.io.render import (
    render_delta_table,
    render_heatmap_png,
    render_heatmap_svg,
    render_mds_stats_table,
    render_similarity_table,
    tiles_csv,
)
from .infmax.mds import GREEDY_DEGREE, GREEDY_VARIANTS, find_mds, minimum_ds_bruteforce
from .infmax.network import MultilayerNetwork
from .infmax.network.generators import (
    ER_COHORTS,
    SF_COHORTS,
    PaGenConfig,
    er_config_like,
    generate_er,
    generate_pa,
    pa_config_like,
)
from .infmax.rng import derive_rng
from .infmax.seeding import METHODS, rank_actors, select_seeds, select_seeds_mds

EXIT_OK = 0
EXIT_TASKS_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_INTERRUPTED = 130

logger = logging.getLogger(__name__)


class JsonFormatter(logging.Formatter):
    def format(self, record: logging.LogRecord) -> str:  # type: ignore[override]
        payload = {
            "timestamp": self.formatTime(record, "%Y-%m-%dT%H:%M:%S%z"),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        if record.exc_info:
            payload["exc"] = self.formatException(record.exc_info)
        return json.dumps(payload, ensure_ascii=False)


def configure_logging(level: str | None = None, log_dir: str | None = None) -> None:
    root = logging.getLogger()
    root.setLevel(level or settings.LOG_LEVEL)
    root.handlers.clear()
    # stdout carries command output; logs go to stderr
    stream_handler = logging.StreamHandler(sys.stderr)
    stream_handler.setFormatter(JsonFormatter())
    root.addHandler(stream_handler)

    log_dir = log_dir or settings.LOG_DIR
    if not log_dir:
        return
    try:
        from logging.handlers import RotatingFileHandler

        os.makedirs(log_dir, exist_ok=True)
        file_handler = RotatingFileHandler(
            filename=os.path.join(log_dir, "infmax.log"),
            maxBytes=10 * 1024 * 1024,
            backupCount=5,
            encoding="utf-8",
        )
        file_handler.setFormatter(JsonFormatter())
        root.addHandler(file_handler)
    except Exception:
        pass


# -- helpers --------------------------------------------------------------------


def _load_network(args: argparse.Namespace) -> MultilayerNetwork:
    return read_network(args.network, args.format)


def _resolve_actors(net: MultilayerNetwork, names: Sequence[str]) -> List:
    # Command-line ids are text; generated networks use integer actors
    by_text = {str(a): a for a in net.actors}
    missing = [n for n in names if n not in by_text]
    if missing:
        raise InfmaxError(f"unknown actors {missing[:5]}")
    return [by_text[n] for n in names]


def _read_actor_list(net: MultilayerNetwork, path: str) -> List:
    text = read_text(path).strip()
    if text.startswith("["):
        names = [str(x) for x in json.loads(text)]
    elif text.startswith("{"):
        names = [str(x) for x in json.loads(text)["members"]]
    else:
        names = [line.strip() for line in text.splitlines() if line.strip()]
    return _resolve_actors(net, names)


def _print_json(payload: object) -> None:
    print(json.dumps(payload, ensure_ascii=False, sort_keys=True))


# -- single runs ------------------------------------------------------------------


def cmd_mds(args: argparse.Namespace) -> int:
    net = _load_network(args)
    rng = derive_rng(args.seed, "cli-mds")
    result = find_mds(net, rng, timeout=args.timeout, greedy=args.greedy)
    payload: Dict[str, object] = {
        "members": result.sorted_members(),
        "size": result.size,
        "greedy_size": result.greedy_size,
        "improvements": result.improvements,
        "timed_out": result.timed_out,
        "elapsed_s": round(result.elapsed_s, 3),
        "n_actors": net.n_actors,
    }
    if args.bruteforce_cap is not None:
        minimum = minimum_ds_bruteforce(net, min(args.bruteforce_cap, net.n_actors))
        payload["minimum"] = None if minimum is None else sorted(minimum)
    _print_json(payload)
    return EXIT_OK


def _seed_set(args: argparse.Namespace, net: MultilayerNetwork):
    rng = derive_rng(args.seed, "cli-seed", args.method)
    ranking = rank_actors(net, args.method, rng)
    if args.mds:
        mds = _read_actor_list(net, args.mds)
        return select_seeds_mds(ranking, net, args.budget, mds)
    return select_seeds(ranking, net, args.budget)


def cmd_seed(args: argparse.Namespace) -> int:
    net = _load_network(args)
    seeds = _seed_set(args, net)
    if seeds is None:
        _print_json({"status": "mds_too_small"})
        return EXIT_OK
    _print_json(
        {"status": "ok", "origin": seeds.origin, "seeds": list(seeds.order), "count": len(seeds)}
    )
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    net = _load_network(args)
    if args.seeds:
        seeds = _resolve_actors(net, [s.strip() for s in args.seeds.split(",") if s.strip()])
    else:
        if not args.method or args.budget is None:
            raise InfmaxError("give --seeds or both --method and --budget")
        chosen = _seed_set(args, net)
        if chosen is None:
            _print_json({"status": "mds_too_small"})
            return EXIT_OK
        seeds = list(chosen.members)
    params = MltmParams(mu=args.mu, protocol=args.protocol, strict=args.strict)
    trace = simulate(net, seeds, params)
    _print_json(
        {
            "status": "ok",
            "active_per_step": trace.sizes(),
            "steps": trace.steps,
            "gamma": gamma(trace),
            "lambda": lambda_(trace),
        }
    )
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    if args.model == "er":
        if args.cohort in ER_COHORTS:
            edges = ER_COHORTS[args.cohort]
        elif args.cohort:
            raise InfmaxError(f"{args.cohort} is not an ER cohort")
        elif args.edges:
            edges = tuple(int(e) for e in args.edges.split(","))
        else:
            raise InfmaxError("give --cohort or --edges")
        net = generate_er(er_config_like(args.actors, edges, args.seed))
    elif args.cohort in SF_COHORTS:
        net = generate_pa(pa_config_like(args.actors, args.cohort, args.seed))
    elif args.cohort:
        raise InfmaxError(f"{args.cohort} is not an SF cohort")
    else:
        net = generate_pa(
            PaGenConfig(
                n_actors=args.actors,
                n_layers=args.layers,
                m0=args.m0,
                m=args.m if args.m is not None else args.m0,
                rng_seed=args.seed,
            )
        )
    write_text_atomic(args.out, dump_multiplex(net))
    return EXIT_OK


# -- experiment grid ----------------------------------------------------------------


def _plan(args: argparse.Namespace) -> ExperimentPlan:
    if args.plan:
        return read_plan(args.plan)
    return PRESETS[args.preset](base_rng_seed=args.seed)


async def _experiment(args: argparse.Namespace) -> int:
    plan = _plan(args)
    shutdown_event: asyncio.Event = asyncio.Event()

    def _handle_signal(name: str) -> None:
        logger.info(json.dumps({"signal": name, "event": "shutdown"}))
        shutdown_event.set()

    loop = asyncio.get_running_loop()
    with suppress(NotImplementedError):
        loop.add_signal_handler(signal.SIGTERM, _handle_signal, "SIGTERM")
    with suppress(NotImplementedError):
        loop.add_signal_handler(signal.SIGINT, _handle_signal, "SIGINT")

    grid_task = asyncio.create_task(run_grid_async(plan, args.workers))
    stop_task = asyncio.create_task(shutdown_event.wait())
    await asyncio.wait({grid_task, stop_task}, return_when=asyncio.FIRST_COMPLETED)
    if not grid_task.done():
        grid_task.cancel()
        with suppress(asyncio.CancelledError):
            await grid_task
        logger.warning("experiment.interrupted out=%s", args.out)
        return EXIT_INTERRUPTED
    stop_task.cancel()

    result = grid_task.result()
    write_text_atomic(os.path.join(args.out, "records.csv"), write_records_csv(result.records))
    write_text_atomic(os.path.join(args.out, "seeds.jsonl"), dump_seed_sets(result.seed_sets))
    write_text_atomic(os.path.join(args.out, "mds.jsonl"), dump_mds_draws(result.mds_draws))
    for failure in result.failures:
        logger.error("experiment.task.failed key=%s err=%s", failure.key, failure.error)
    return EXIT_OK if result.ok else EXIT_TASKS_FAILED


def cmd_experiment(args: argparse.Namespace) -> int:
    return asyncio.run(_experiment(args))


# -- reports ------------------------------------------------------------------------


def _significance(args: argparse.Namespace) -> float:
    # Flag, then the plan the records came from, then the environment default
    if args.significance is not None:
        return args.significance
    if args.plan:
        return read_plan(args.plan).significance
    return settings.SIGNIFICANCE


def cmd_report_heatmap(args: argparse.Namespace) -> int:
    pairs = pair_records(read_records_csv(read_text(args.records)))
    stratum = select_stratum(pairs, args.protocol, args.network_type)
    if not stratum:
        raise InfmaxError(
            f"no pairs for protocol={args.protocol} network_type={args.network_type}"
        )
    grid = aggregate_heatmap(stratum, args.metric, _significance(args))
    label = f"{args.metric} {args.protocol} {args.network_type or 'all'}"
    write_text_atomic(args.out + ".svg", render_heatmap_svg(grid, label))
    write_text_atomic(args.out + ".csv", tiles_csv(grid))
    if args.png:
        write_bytes_atomic(args.out + ".png", render_heatmap_png(grid, label))
    return EXIT_OK


def cmd_report_mds_stats(args: argparse.Namespace) -> int:
    report = mds_report(load_mds_draws(read_text(args.mds)))
    print(render_mds_stats_table(report))
    return EXIT_OK


def cmd_report_similarity(args: argparse.Namespace) -> int:
    rows = similarity_report(load_seed_sets(read_text(args.seeds)))
    print(render_similarity_table(rows))
    return EXIT_OK


def cmd_report_deltas(args: argparse.Namespace) -> int:
    pairs = pair_records(read_records_csv(read_text(args.records)))
    methods = args.methods.split(",") if args.methods else None
    print(render_delta_table(delta_report(pairs, args.metric, methods), args.metric))
    return EXIT_OK


# -- argument parsing -----------------------------------------------------------------


def _network_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("network", help="network file (multiplex lines or .mpx)")
    p.add_argument("--format", choices=("multiplex", "mpx"), default=None)
    p.add_argument("--seed", type=int, default=0, help="rng seed")


def _selection_args(p: argparse.ArgumentParser, required: bool) -> None:
    p.add_argument("--method", choices=METHODS, required=required)
    p.add_argument("--budget", type=float, required=required, help="share of actors, e.g. 0.25")
    p.add_argument("--mds", help="file with MDS members (JSON list or one per line)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="infmax", description="MDS-filtered seeding for multilayer threshold diffusion"
    )
    parser.add_argument("--log-level", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mds", help="compute a minimal dominating set")
    _network_args(p)
    p.add_argument("--timeout", type=float, default=None, help="seconds for local improvement")
    p.add_argument("--greedy", choices=GREEDY_VARIANTS, default=GREEDY_DEGREE)
    p.add_argument("--bruteforce-cap", type=int, default=None)
    p.set_defaults(func=cmd_mds)

    p = sub.add_parser("seed", help="select a seed set")
    _network_args(p)
    _selection_args(p, required=True)
    p.set_defaults(func=cmd_seed)

    p = sub.add_parser("simulate", help="run one threshold diffusion")
    _network_args(p)
    _selection_args(p, required=False)
    p.add_argument("--seeds", help="comma separated actor ids")
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--protocol", choices=("AND", "OR"), required=True)
    p.add_argument("--strict", action="store_true", help="compare with > instead of >=")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("generate", help="write a synthetic network")
    p.add_argument("model", choices=("er", "pa"))
    p.add_argument("--out", required=True)
    p.add_argument("--actors", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cohort", choices=sorted(ER_COHORTS) + sorted(SF_COHORTS))
    p.add_argument("--edges", help="er: comma separated edge count per layer")
    p.add_argument("--layers", type=int, default=3)
    p.add_argument("--m0", type=int, default=6)
    p.add_argument("--m", type=int, default=None)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("experiment", help="run an experiment grid")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--plan", help="plan JSON file")
    source.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--seed", type=int, default=0, help="base seed for presets")
    p.add_argument("--out", required=True)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_experiment)

    report = sub.add_parser("report", help="aggregate finished grids")
    rsub = report.add_subparsers(dest="report", required=True)

    p = rsub.add_parser("heatmap")
    p.add_argument("--records", required=True)
    p.add_argument("--metric", choices=("gamma", "lambda"), default="gamma")
    p.add_argument("--protocol", choices=("AND", "OR"), required=True)
    p.add_argument("--network-type", choices=("ER", "SF", "real"), default=None)
    p.add_argument("--significance", type=float, default=None)
    p.add_argument("--plan", default=None, help="plan file supplying the significance")
    p.add_argument("--out", required=True, help="output path without extension")
    p.add_argument("--png", action="store_true")
    p.set_defaults(func=cmd_report_heatmap)

    p = rsub.add_parser("mds-stats")
    p.add_argument("--mds", required=True, help="mds.jsonl")
    p.set_defaults(func=cmd_report_mds_stats)

    p = rsub.add_parser("similarity")
    p.add_argument("--seeds", required=True, help="seeds.jsonl")
    p.set_defaults(func=cmd_report_similarity)

    p = rsub.add_parser("deltas")
    p.add_argument("--records", required=True)
    p.add_argument("--metric", choices=("gamma", "lambda"), default="gamma")
    p.add_argument("--methods", default=None, help="comma separated subset")
    p.set_defaults(func=cmd_report_deltas)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        return args.func(args)
    except (InfmaxError, OSError, ValueError, KeyError) as exc:
        logger.error("cli.failed command=%s err=%s", args.command, exc)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
