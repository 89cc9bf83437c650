"""
Seed selection from a ranking: plain top-k, or top-k restricted to the
members of a dominating set.
"""

import math
from dataclasses import dataclass
from typing import AbstractSet, FrozenSet, Iterable, Optional, Tuple

from ..errors import BudgetTooSmallError
from ..mds.domination import require_dominating
from ..network.core import ActorId, MultilayerNetwork
from .heuristics import ActorRanking

BASELINE = "baseline"
MDS_FILTERED = "mds_filtered"

# Absorbs binary rounding such as 0.29 * 100
_FLOOR_EPS = 1e-9


@dataclass(frozen=True)
class SeedSet:
    members: FrozenSet[ActorId]
    budget: float
    origin: str = BASELINE
    # Selection order, best ranked first
    order: Tuple[ActorId, ...] = ()

    def __len__(self) -> int:
        return len(self.members)

    @property
    def mds_filtered(self) -> bool:
        return self.origin == MDS_FILTERED


def budget_count(s: float, n_actors: int) -> int:
    """Number of seeds for budget fraction s: floor(s * |A|)."""
    if not 0 < s < 1:
        raise ValueError(f"budget {s!r} outside (0, 1)")
    return math.floor(s * n_actors + _FLOOR_EPS)


def _checked_count(ranking: ActorRanking, net: MultilayerNetwork, s: float) -> int:
    if len(ranking) != net.n_actors:
        raise ValueError(
            f"ranking covers {len(ranking)} actors, network has {net.n_actors}"
        )
    k = budget_count(s, net.n_actors)
    if k == 0:
        raise BudgetTooSmallError(
            f"budget {s} selects no seeds from {net.n_actors} actors"
        )
    return k


def select_seeds(ranking: ActorRanking, net: MultilayerNetwork, s: float) -> SeedSet:
    k = _checked_count(ranking, net, s)
    chosen = ranking.top(k)
    return SeedSet(members=frozenset(chosen), budget=s, origin=BASELINE, order=chosen)


def select_seeds_mds(
    ranking: ActorRanking,
    net: MultilayerNetwork,
    s: float,
    mds: Iterable[ActorId],
    check: bool = True,
) -> Optional[SeedSet]:
    """Top-k ranked actors that belong to `mds`; None when |mds| < k.

    `check=False` skips the domination check for callers that validated the
    set already.
    """
    k = _checked_count(ranking, net, s)
    members: AbstractSet[ActorId] = mds if isinstance(mds, (set, frozenset)) else set(mds)
    if check:
        require_dominating(net, members)
    if len(members) < k:
        return None
    chosen = []
    for actor in ranking:
        if actor in members:
            chosen.append(actor)
            if len(chosen) == k:
                break
    return SeedSet(
        members=frozenset(chosen), budget=s, origin=MDS_FILTERED, order=tuple(chosen)
    )


def jaccard(x: AbstractSet[ActorId], y: AbstractSet[ActorId]) -> float:
    """Intersection over union; 1.0 for two empty sets."""
    x, y = set(x), set(y)
    union = len(x | y)
    if not union:
        return 1.0
    return len(x & y) / union
