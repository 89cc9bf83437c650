from .heuristics import METHODS, ActorRanking, rank_actors
from .selection import (
    BASELINE,
    MDS_FILTERED,
    SeedSet,
    budget_count,
    jaccard,
    select_seeds,
    select_seeds_mds,
)

__all__ = [
    "ActorRanking",
    "BASELINE",
    "MDS_FILTERED",
    "METHODS",
    "SeedSet",
    "budget_count",
    "jaccard",
    "rank_actors",
    "select_seeds",
    "select_seeds_mds",
]
