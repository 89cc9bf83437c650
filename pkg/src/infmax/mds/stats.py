"""
Summary statistics over repeated MDS draws of one network.
"""

from dataclasses import dataclass
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import entropy

from ..network.core import ActorId
from .domination import DominatingSet


@dataclass(frozen=True)
class MdsStats:
    n_sets: int
    size_range: Tuple[float, float]
    avg_size: float
    std_size: float
    unique_count: int
    # None when every draw is the same set
    avg_iou: Optional[float]
    entropy_bits: Optional[float]
    avg_size_reduction: float
    std_size_reduction: float


def _pairwise_iou(sets: Sequence[DominatingSet]) -> float:
    universe = sorted(set().union(*sets))
    column = {a: j for j, a in enumerate(universe)}
    membership = np.zeros((len(sets), len(universe)), dtype=np.int64)
    for i, members in enumerate(sets):
        membership[i, [column[a] for a in members]] = 1
    inter = membership @ membership.T
    sizes = membership.sum(axis=1)
    union = sizes[:, None] + sizes[None, :] - inter
    rows, cols = np.triu_indices(len(sets), k=1)
    u = union[rows, cols]
    # Two empty sets count as identical
    iou = np.where(u > 0, inter[rows, cols] / np.maximum(u, 1), 1.0)
    return float(iou.mean())


def actor_frequencies(sets: Sequence[DominatingSet]) -> List[Tuple[ActorId, int]]:
    """(actor, number of draws containing it), most frequent first."""
    counts: Dict[Hashable, int] = {}
    for members in sets:
        for actor in members:
            counts[actor] = counts.get(actor, 0) + 1
    pairs = sorted(counts.items(), key=lambda kv: kv[0])
    pairs.sort(key=lambda kv: kv[1], reverse=True)
    return pairs


def mds_statistics(
    sets: Sequence[DominatingSet], greedy_sizes: Sequence[int], n_actors: int
) -> MdsStats:
    if not sets:
        raise ValueError("mds_statistics needs at least one set")
    if len(sets) != len(greedy_sizes):
        raise ValueError(
            f"{len(sets)} sets but {len(greedy_sizes)} greedy sizes"
        )
    if n_actors < 1:
        raise ValueError("n_actors must be positive")

    frozen = [frozenset(s) for s in sets]
    sizes = np.array([len(s) for s in frozen], dtype=float)
    normalized = sizes / n_actors
    greedy = np.array(greedy_sizes, dtype=float)
    reduction = np.divide(
        greedy - sizes, greedy, out=np.zeros_like(greedy), where=greedy > 0
    )
    unique = len(set(frozen))

    avg_iou: Optional[float] = None
    entropy_bits: Optional[float] = None
    if unique > 1:
        avg_iou = _pairwise_iou(frozen)
        counts = np.array([c for _, c in actor_frequencies(frozen)], dtype=float)
        entropy_bits = float(entropy(counts, base=2))

    return MdsStats(
        n_sets=len(frozen),
        size_range=(float(normalized.min()), float(normalized.max())),
        avg_size=float(normalized.mean()),
        std_size=float(normalized.std()),
        unique_count=unique,
        avg_iou=avg_iou,
        entropy_bits=entropy_bits,
        avg_size_reduction=float(reduction.mean()),
        std_size_reduction=float(reduction.std()),
    )
