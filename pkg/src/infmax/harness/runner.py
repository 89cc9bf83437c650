"""
Experiment grid execution. One task per (network, instance, repetition). For
every method it ranks the actors, and for every protocol it draws a fresh MDS
before running the baseline and MDS-filtered simulations over that
protocol's budgets and thresholds.

Tasks run on a process pool (or a single worker thread when workers=1),
bounded by a semaphore. A failed task is logged and reported; the rest of
the grid continues. Output is sorted, so the CSV does not depend on the
completion order.
"""

import asyncio
import functools
import json
import logging
import time
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

from .. import settings
from ..diffusion.metrics import gamma, lambda_
from ..diffusion.mltm import MltmParams, SpreadTrace, simulate
from ..io.plan import ExperimentPlan, NetworkSpec
from ..io.records import (
    STATUS_MDS_TOO_SMALL,
    STATUS_OK,
    MdsDrawRecord,
    RunRecord,
    SeedSetRecord,
)
from ..mds.search import find_mds
from ..network.core import ActorId, MultilayerNetwork
from ..rng import derive_rng
from ..seeding.heuristics import RANDOM, ActorRanking, rank_actors
from ..seeding.selection import SeedSet, select_seeds, select_seeds_mds

logger = logging.getLogger(__name__)

TaskKey = Tuple[str, int, int]


@dataclass
class TaskOutput:
    key: TaskKey
    records: List[RunRecord] = field(default_factory=list)
    seed_sets: List[SeedSetRecord] = field(default_factory=list)
    mds_draws: List[MdsDrawRecord] = field(default_factory=list)


@dataclass(frozen=True)
class TaskFailure:
    key: TaskKey
    error: str


@dataclass
class GridResult:
    records: List[RunRecord]
    seed_sets: List[SeedSetRecord]
    mds_draws: List[MdsDrawRecord]
    failures: List[TaskFailure]

    @property
    def ok(self) -> bool:
        return not self.failures


def schedule(plan: ExperimentPlan) -> List[TaskKey]:
    return [
        (spec.name, instance, repetition)
        for spec in plan.networks
        for instance in range(spec.instances)
        for repetition in range(plan.repetitions)
    ]


def expected_record_count(plan: ExperimentPlan) -> int:
    per_task = sum(len(plan.budgets_for(p)) for p in plan.protocols) * len(plan.thresholds)
    return 2 * per_task * len(plan.methods) * len(schedule(plan))


def expected_mds_draws(plan: ExperimentPlan) -> int:
    return len(plan.methods) * len(plan.protocols) * len(schedule(plan))


# Per worker process; schedule order keeps one instance's repetitions together
@functools.lru_cache(maxsize=settings.NETWORK_CACHE_SIZE)
def _materialize(
    name: str, source: str, instance: int, base_dir: str | None
) -> MultilayerNetwork:
    return NetworkSpec(name=name, source=json.loads(source)).materialize(instance, base_dir)


def _network(plan: ExperimentPlan, spec: NetworkSpec, instance: int) -> MultilayerNetwork:
    return _materialize(
        spec.name, json.dumps(spec.source, sort_keys=True), instance, plan.base_dir
    )


def _spec(plan: ExperimentPlan, name: str) -> NetworkSpec:
    for spec in plan.networks:
        if spec.name == name:
            return spec
    raise KeyError(name)


def _ranking(
    plan: ExperimentPlan,
    net: MultilayerNetwork,
    key: TaskKey,
    method: str,
    mds_filtered: bool,
) -> ActorRanking:
    if method != RANDOM:
        return rank_actors(net, method)
    # The two variants of the random heuristic draw independent permutations
    variant = ("mds",) if mds_filtered else ()
    return rank_actors(net, method, derive_rng(plan.base_rng_seed, *key, method, *variant))


def run_task(plan: ExperimentPlan, name: str, instance: int, repetition: int) -> TaskOutput:
    """Everything scheduled for one repetition of one network instance."""
    started = time.monotonic()
    spec = _spec(plan, name)
    net = _network(plan, spec, instance)
    key: TaskKey = (name, instance, repetition)
    timeout = settings.mds_timeout_seconds(
        net.n_actors, plan.mds_timeout_minutes_per_1000_actors
    )
    out = TaskOutput(key=key)

    traces: Dict[Tuple[FrozenSet[ActorId], MltmParams], SpreadTrace] = {}

    def run(seeds: SeedSet, params: MltmParams) -> SpreadTrace:
        # Identical seed sets (e.g. when the MDS holds every actor) share a trace
        cache_key = (seeds.members, params)
        if cache_key not in traces:
            traces[cache_key] = simulate(net, seeds, params)
        return traces[cache_key]

    def keep(seeds: SeedSet, method: str, protocol: str, s: float) -> None:
        out.seed_sets.append(
            SeedSetRecord(
                network=name,
                network_type=spec.type,
                instance=instance,
                method=method,
                protocol=protocol,
                budget=s,
                repetition=repetition,
                mds_filtered=seeds.mds_filtered,
                seeds=tuple(sorted(seeds.members)),
            )
        )

    for method in plan.methods:
        ranking = _ranking(plan, net, key, method, mds_filtered=False)
        filtered_ranking = (
            _ranking(plan, net, key, method, mds_filtered=True)
            if method == RANDOM
            else ranking
        )
        for protocol in plan.protocols:
            search = find_mds(
                net,
                derive_rng(plan.base_rng_seed, *key, method, protocol, "mds"),
                timeout=timeout,
                greedy=plan.mds_greedy,
            )
            mds = search.members
            out.mds_draws.append(
                MdsDrawRecord(
                    network=name,
                    network_type=spec.type,
                    instance=instance,
                    method=method,
                    protocol=protocol,
                    repetition=repetition,
                    n_actors=net.n_actors,
                    greedy_size=search.greedy_size,
                    members=tuple(search.sorted_members()),
                    timed_out=search.timed_out,
                )
            )
            for s in plan.budgets_for(protocol):
                base = select_seeds(ranking, net, s)
                filtered = select_seeds_mds(filtered_ranking, net, s, mds, check=False)
                keep(base, method, protocol, s)
                if filtered is not None:
                    keep(filtered, method, protocol, s)
                for mu in plan.thresholds:
                    params = MltmParams(mu=mu, protocol=protocol)
                    common = dict(
                        network=name,
                        network_type=spec.type,
                        instance=instance,
                        method=method,
                        protocol=protocol,
                        mu=mu,
                        budget=s,
                        repetition=repetition,
                    )
                    trace = run(base, params)
                    out.records.append(
                        RunRecord(
                            mds_filtered=False,
                            seed_count=len(base),
                            mds_size=None,
                            gamma=gamma(trace),
                            lambda_=lambda_(trace),
                            steps=trace.steps,
                            status=STATUS_OK,
                            **common,
                        )
                    )
                    if filtered is None:
                        out.records.append(
                            RunRecord(
                                mds_filtered=True,
                                seed_count=None,
                                mds_size=len(mds),
                                gamma=None,
                                lambda_=None,
                                steps=None,
                                status=STATUS_MDS_TOO_SMALL,
                                **common,
                            )
                        )
                        continue
                    trace = run(filtered, params)
                    out.records.append(
                        RunRecord(
                            mds_filtered=True,
                            seed_count=len(filtered),
                            mds_size=len(mds),
                            gamma=gamma(trace),
                            lambda_=lambda_(trace),
                            steps=trace.steps,
                            status=STATUS_OK,
                            **common,
                        )
                    )

    logger.info(
        "grid.task.done network=%s instance=%d repetition=%d mds_draws=%d records=%d elapsed_s=%.2f",
        name,
        instance,
        repetition,
        len(out.mds_draws),
        len(out.records),
        time.monotonic() - started,
    )
    return out




def _executor(workers: int) -> Executor:
    if workers > 1:
        return ProcessPoolExecutor(max_workers=workers)
    return ThreadPoolExecutor(max_workers=1)


async def run_grid_async(plan: ExperimentPlan, workers: int | None = None) -> GridResult:
    plan.validate()
    workers = max(1, workers or settings.WORKERS)
    keys = schedule(plan)
    logger.info(
        "grid.start networks=%d tasks=%d expected_records=%d workers=%d",
        len(plan.networks),
        len(keys),
        expected_record_count(plan),
        workers,
    )
    started = time.monotonic()
    semaphore = asyncio.Semaphore(workers)
    failures: List[TaskFailure] = []
    loop = asyncio.get_running_loop()

    with _executor(workers) as executor:

        async def one(key: TaskKey) -> Optional[TaskOutput]:
            async with semaphore:
                try:
                    return await loop.run_in_executor(executor, run_task, plan, *key)
                except Exception as e:
                    logger.error(
                        "grid.task.error network=%s instance=%d repetition=%d err=%r",
                        *key,
                        e,
                    )
                    failures.append(TaskFailure(key=key, error=repr(e)))
                    return None

        outputs = await asyncio.gather(*(one(key) for key in keys))

    done = [o for o in outputs if o is not None]
    records = sorted((r for o in done for r in o.records), key=lambda r: r.sort_key)
    seed_sets = sorted((s for o in done for s in o.seed_sets), key=lambda s: s.sort_key)
    draws = sorted((d for o in done for d in o.mds_draws), key=lambda d: d.sort_key)
    failures.sort(key=lambda f: f.key)
    logger.info(
        "grid.done tasks=%d failed=%d records=%d elapsed_s=%.1f",
        len(keys),
        len(failures),
        len(records),
        time.monotonic() - started,
    )
    return GridResult(records=records, seed_sets=seed_sets, mds_draws=draws, failures=failures)


def run_grid(plan: ExperimentPlan, workers: int | None = None) -> GridResult:
    return asyncio.run(run_grid_async(plan, workers))
