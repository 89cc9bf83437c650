"""
Pairs every baseline run with its MDS-filtered counterpart and bins each pair
as significant / insignificant / failed_no_start / failed_mds_too_small.
"""

import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from .. import settings
from ..errors import PairingError
from ..io.records import STATUS_MDS_TOO_SMALL, STATUS_OK, RunRecord

SIGNIFICANT = "significant"
INSIGNIFICANT = "insignificant"
FAILED_NO_START = "failed_no_start"
FAILED_MDS_TOO_SMALL = "failed_mds_too_small"
CLASSES = (SIGNIFICANT, INSIGNIFICANT, FAILED_NO_START, FAILED_MDS_TOO_SMALL)

METRICS = ("gamma", "lambda")
# Differences within this of the significance bound count as equal to it
DELTA_TOLERANCE = 1e-9


@dataclass(frozen=True)
class PairedResult:
    network: str
    network_type: str
    instance: int
    method: str
    protocol: str
    mu: float
    budget: float
    repetition: int
    gamma_base: Optional[float]
    gamma_mds: Optional[float]
    lambda_base: Optional[float]
    lambda_mds: Optional[float]
    status_base: str
    status_mds: str

    @classmethod
    def from_records(cls, base: RunRecord, mds: RunRecord) -> "PairedResult":
        if base.mds_filtered or not mds.mds_filtered:
            raise PairingError("expected one baseline and one mds-filtered record")
        if base.pair_key != mds.pair_key:
            raise PairingError(f"pairing keys differ: {base.pair_key} vs {mds.pair_key}")
        if base.status != STATUS_OK:
            raise PairingError(f"baseline run {base.pair_key} has status {base.status!r}")
        return cls(
            network=base.network,
            network_type=base.network_type,
            instance=base.instance,
            method=base.method,
            protocol=base.protocol,
            mu=base.mu,
            budget=base.budget,
            repetition=base.repetition,
            gamma_base=base.gamma,
            gamma_mds=mds.gamma,
            lambda_base=base.lambda_,
            lambda_mds=mds.lambda_,
            status_base=base.status,
            status_mds=mds.status,
        )

    @property
    def completed(self) -> bool:
        return self.status_base == STATUS_OK and self.status_mds == STATUS_OK

    def values(self, metric: str) -> Tuple[Optional[float], Optional[float]]:
        if metric == "gamma":
            return self.gamma_base, self.gamma_mds
        if metric == "lambda":
            return self.lambda_base, self.lambda_mds
        raise ValueError(f"unknown metric {metric!r}")

    def delta(self, metric: str) -> Optional[float]:
        """metric(mds-filtered) - metric(baseline), None unless both ran."""
        base, mds = self.values(metric)
        if base is None or mds is None:
            return None
        return mds - base


def pair_records(records: Iterable[RunRecord]) -> List[PairedResult]:
    baselines: Dict[tuple, RunRecord] = {}
    filtered: Dict[tuple, RunRecord] = {}
    for record in records:
        bucket = filtered if record.mds_filtered else baselines
        if record.pair_key in bucket:
            raise PairingError(f"duplicate record for {record.pair_key}")
        bucket[record.pair_key] = record
    missing = set(baselines) ^ set(filtered)
    if missing:
        raise PairingError(f"records without counterpart: {sorted(missing)[:3]}")
    return [
        PairedResult.from_records(baselines[key], filtered[key]) for key in sorted(baselines)
    ]


def classify_pair(
    pair: PairedResult, metric: str = "gamma", significance: float | None = None
) -> str:
    """Bins a pair. A pair where neither run moved beyond its seeds (gamma 0
    on both sides) did not start, whichever metric is being compared."""
    if significance is None:
        significance = settings.SIGNIFICANCE
    if pair.status_mds == STATUS_MDS_TOO_SMALL:
        return FAILED_MDS_TOO_SMALL
    if pair.gamma_base == 0 and pair.gamma_mds == 0:
        return FAILED_NO_START
    delta = pair.delta(metric)
    if delta is None:
        raise PairingError(f"pair {pair.network}/{pair.method} lacks {metric} values")
    if abs(delta) > significance and not math.isclose(
        abs(delta), significance, rel_tol=0.0, abs_tol=DELTA_TOLERANCE
    ):
        return SIGNIFICANT
    return INSIGNIFICANT
