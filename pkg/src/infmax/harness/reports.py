"""
Aggregations over finished grids: threshold/budget heatmaps of the
mds-filtered vs baseline difference, seed-set similarity, MDS draw
statistics and per-network mean differences.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from .. import settings
from ..errors import PairingError, RaggedGridError
from ..io.records import MdsDrawRecord, SeedSetRecord
from ..mds.stats import MdsStats, mds_statistics
from ..seeding.selection import jaccard
from .pairing import (
    FAILED_MDS_TOO_SMALL,
    FAILED_NO_START,
    INSIGNIFICANT,
    SIGNIFICANT,
    PairedResult,
    classify_pair,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HeatmapTile:
    mu: float
    budget: float
    # None when the tile has no feasible pair
    mean_delta: Optional[float]
    significant: int
    insignificant: int
    failed_no_start: int
    failed_mds_too_small: int
    # None when no pair is significant (grey tile)
    pct_mds_better: Optional[float]

    @property
    def total(self) -> int:
        return (
            self.significant
            + self.insignificant
            + self.failed_no_start
            + self.failed_mds_too_small
        )


@dataclass(frozen=True)
class HeatmapGrid:
    metric: str
    thresholds: Tuple[float, ...]
    budgets: Tuple[float, ...]
    tiles: Dict[Tuple[float, float], HeatmapTile]

    def tile(self, mu: float, budget: float) -> HeatmapTile:
        return self.tiles[(mu, budget)]

    def rows(self) -> List[List[HeatmapTile]]:
        """One row per threshold, columns ordered by budget."""
        return [[self.tiles[(mu, s)] for s in self.budgets] for mu in self.thresholds]

    def iter_tiles(self) -> Iterable[HeatmapTile]:
        for row in self.rows():
            yield from row


def select_stratum(
    pairs: Iterable[PairedResult],
    protocol: str | None = None,
    network_type: str | None = None,
) -> List[PairedResult]:
    return [
        p
        for p in pairs
        if (protocol is None or p.protocol == protocol)
        and (network_type is None or p.network_type == network_type)
    ]


def _tile(
    mu: float, budget: float, pairs: Sequence[PairedResult], metric: str, significance: float
) -> HeatmapTile:
    counts = {SIGNIFICANT: 0, INSIGNIFICANT: 0, FAILED_NO_START: 0, FAILED_MDS_TOO_SMALL: 0}
    feasible: List[float] = []
    better = 0
    for pair in pairs:
        label = classify_pair(pair, metric, significance)
        counts[label] += 1
        if label in (SIGNIFICANT, INSIGNIFICANT):
            delta = pair.delta(metric)
            feasible.append(delta)
            if label == SIGNIFICANT and delta > 0:
                better += 1
    significant = counts[SIGNIFICANT]
    return HeatmapTile(
        mu=mu,
        budget=budget,
        mean_delta=float(np.mean(feasible)) if feasible else None,
        significant=significant,
        insignificant=counts[INSIGNIFICANT],
        failed_no_start=counts[FAILED_NO_START],
        failed_mds_too_small=counts[FAILED_MDS_TOO_SMALL],
        pct_mds_better=100.0 * better / significant if significant else None,
    )


def aggregate_heatmap(
    pairs: Iterable[PairedResult],
    metric: str = "gamma",
    significance: float | None = None,
) -> HeatmapGrid:
    """Tiles over (mu, budget) for pairs of a single protocol."""
    if significance is None:
        significance = settings.SIGNIFICANCE
    pairs = list(pairs)
    protocols = {p.protocol for p in pairs}
    if len(protocols) > 1:
        raise PairingError(f"heatmap pairs mix protocols {sorted(protocols)}")
    cells: Dict[Tuple[float, float], List[PairedResult]] = defaultdict(list)
    for pair in pairs:
        cells[(pair.mu, pair.budget)].append(pair)
    thresholds = tuple(sorted({mu for mu, _ in cells}))
    budgets = tuple(sorted({s for _, s in cells}))
    missing = [(mu, s) for mu in thresholds for s in budgets if (mu, s) not in cells]
    if missing:
        raise RaggedGridError(f"no pairs for (mu, budget) cells {missing[:3]}")
    tiles = {
        key: _tile(key[0], key[1], cell, metric, significance) for key, cell in cells.items()
    }
    logger.info(
        "reports.heatmap metric=%s pairs=%d tiles=%d", metric, len(pairs), len(tiles)
    )
    return HeatmapGrid(metric=metric, thresholds=thresholds, budgets=budgets, tiles=tiles)


@dataclass(frozen=True)
class SimilarityRow:
    network_type: str
    method: str
    budget: float
    mean_iou: float
    std_iou: float
    n_pairs: int


def similarity_report(seed_sets: Iterable[SeedSetRecord]) -> List[SimilarityRow]:
    """Jaccard similarity of baseline vs mds-filtered seeds per (type, method, budget).

    Runs where the MDS was too small have no filtered seed set and drop out.
    """
    baselines: Dict[tuple, SeedSetRecord] = {}
    filtered: Dict[tuple, SeedSetRecord] = {}
    for item in seed_sets:
        key = item.sort_key[:-1]
        (filtered if item.mds_filtered else baselines)[key] = item
    orphans = set(filtered) - set(baselines)
    if orphans:
        raise PairingError(f"mds-filtered seed sets without baseline: {sorted(orphans)[:3]}")
    rows = [
        {
            "network_type": base.network_type,
            "method": base.method,
            "budget": base.budget,
            "iou": jaccard(set(base.seeds), set(filtered[key].seeds)),
        }
        for key, base in baselines.items()
        if key in filtered
    ]
    if not rows:
        return []
    frame = pd.DataFrame(rows)
    grouped = (
        frame.groupby(["network_type", "method", "budget"], sort=True)["iou"]
        .agg(mean_iou="mean", std_iou=lambda x: float(np.std(x)), n_pairs="size")
        .reset_index()
    )
    return [
        SimilarityRow(
            network_type=r["network_type"],
            method=r["method"],
            budget=float(r["budget"]),
            mean_iou=float(r["mean_iou"]),
            std_iou=float(r["std_iou"]),
            n_pairs=int(r["n_pairs"]),
        )
        for r in grouped.to_dict("records")
    ]


def mds_report(draws: Iterable[MdsDrawRecord]) -> Dict[str, MdsStats]:
    """MDS draw statistics per network (instances pooled)."""
    by_network: Dict[str, List[MdsDrawRecord]] = defaultdict(list)
    for draw in draws:
        by_network[draw.network].append(draw)
    if not by_network:
        raise ValueError("no MDS draws to report")
    report: Dict[str, MdsStats] = {}
    for network in sorted(by_network):
        group = sorted(by_network[network], key=lambda d: d.sort_key)
        sizes = {d.n_actors for d in group}
        if len(sizes) > 1:
            # Instances differ in size: normalise by their mean size
            n_actors = int(round(np.mean([d.n_actors for d in group])))
            logger.warning(
                "reports.mds.mixed_sizes network=%s sizes=%s", network, sorted(sizes)
            )
        else:
            n_actors = sizes.pop()
        report[network] = mds_statistics(
            [frozenset(d.members) for d in group],
            [d.greedy_size for d in group],
            n_actors,
        )
    return report


@dataclass(frozen=True)
class DeltaRow:
    network: str
    network_type: str
    mean_delta: float
    std_delta: float
    n_pairs: int


def delta_report(
    pairs: Iterable[PairedResult],
    metric: str = "gamma",
    methods: Sequence[str] | None = None,
) -> List[DeltaRow]:
    """Mean and spread of metric(mds) - metric(baseline) per network, over
    pairs where both runs completed."""
    rows = [
        {"network": p.network, "network_type": p.network_type, "delta": p.delta(metric)}
        for p in pairs
        if p.completed and (methods is None or p.method in methods)
    ]
    rows = [r for r in rows if r["delta"] is not None]
    if not rows:
        return []
    frame = pd.DataFrame(rows)
    grouped = (
        frame.groupby(["network", "network_type"], sort=True)["delta"]
        .agg(mean_delta="mean", std_delta=lambda x: float(np.std(x)), n_pairs="size")
        .reset_index()
    )
    return [
        DeltaRow(
            network=r["network"],
            network_type=r["network_type"],
            mean_delta=float(r["mean_delta"]),
            std_delta=float(r["std_delta"]),
            n_pairs=int(r["n_pairs"]),
        )
        for r in grouped.to_dict("records")
    ]
