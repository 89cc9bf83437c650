from .pairing import PairedResult, classify_pair, pair_records
from .reports import (
    DeltaRow,
    HeatmapGrid,
    HeatmapTile,
    SimilarityRow,
    aggregate_heatmap,
    delta_report,
    mds_report,
    select_stratum,
    similarity_report,
)
from .runner import GridResult, TaskFailure, run_grid, run_grid_async, run_task

__all__ = [
    "DeltaRow",
    "GridResult",
    "HeatmapGrid",
    "HeatmapTile",
    "PairedResult",
    "SimilarityRow",
    "TaskFailure",
    "aggregate_heatmap",
    "classify_pair",
    "delta_report",
    "mds_report",
    "pair_records",
    "run_grid",
    "run_grid_async",
    "run_task",
    "select_stratum",
    "similarity_report",
]
