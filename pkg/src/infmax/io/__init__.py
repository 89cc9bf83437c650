"""
File formats: multiplex network text, experiment plans, run records and
their sidecars. Report rendering lives in `render` and is imported on demand.
"""

from .multiplex import dump_multiplex, load_mpx, load_multiplex, read_network
from .plan import ExperimentPlan, NetworkSpec, load_plan, read_plan
from .records import RunRecord, read_records_csv, write_records_csv

__all__ = [
    "ExperimentPlan",
    "NetworkSpec",
    "RunRecord",
    "dump_multiplex",
    "load_mpx",
    "load_multiplex",
    "load_plan",
    "read_network",
    "read_plan",
    "read_records_csv",
    "write_records_csv",
]
