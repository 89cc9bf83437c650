from .domination import (
    DominatingSet,
    DominationMap,
    compute_domination,
    find_replacement_candidates,
    forced_members,
    is_dominating,
    require_dominating,
)
from .search import (
    GREEDY_COVERAGE,
    GREEDY_DEGREE,
    GREEDY_VARIANTS,
    MdsSearchResult,
    coverage_greedy_dominating_set,
    degree_greedy_dominating_set,
    find_mds,
    greedy_dominating_set,
    local_improvement,
    minimum_ds_bruteforce,
    remove_redundant,
)
from .stats import MdsStats, actor_frequencies, mds_statistics

__all__ = [
    "GREEDY_COVERAGE",
    "GREEDY_DEGREE",
    "GREEDY_VARIANTS",
    "DominatingSet",
    "DominationMap",
    "MdsSearchResult",
    "MdsStats",
    "actor_frequencies",
    "compute_domination",
    "coverage_greedy_dominating_set",
    "degree_greedy_dominating_set",
    "find_mds",
    "find_replacement_candidates",
    "forced_members",
    "greedy_dominating_set",
    "is_dominating",
    "local_improvement",
    "mds_statistics",
    "minimum_ds_bruteforce",
    "remove_redundant",
    "require_dominating",
]
