"""
Result persistence: RunRecord rows as CSV (fixed column order), plus JSON-lines
sidecars for the seed sets and MDS draws that back the similarity and MDS
reports. Writes go through a temp file and os.replace.
"""

import io
import json
import logging
import os
from dataclasses import dataclass, fields
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import pandas as pd

from ..errors import RecordsFormatError

logger = logging.getLogger(__name__)

STATUS_OK = "ok"
STATUS_MDS_TOO_SMALL = "mds_too_small"

COLUMNS: Tuple[str, ...] = (
    "network",
    "network_type",
    "instance",
    "method",
    "mds_filtered",
    "protocol",
    "mu",
    "budget",
    "repetition",
    "seed_count",
    "mds_size",
    "gamma",
    "lambda",
    "steps",
    "status",
)

_INT_COLUMNS = ("instance", "repetition")
_OPT_INT_COLUMNS = ("seed_count", "mds_size", "steps")
_FLOAT_COLUMNS = ("mu", "budget")
_OPT_FLOAT_COLUMNS = ("gamma", "lambda")
_STR_COLUMNS = ("network", "network_type", "method", "protocol", "status")


@dataclass(frozen=True)
class RunRecord:
    network: str
    network_type: str
    instance: int
    method: str
    mds_filtered: bool
    protocol: str
    mu: float
    budget: float
    repetition: int
    seed_count: Optional[int]
    mds_size: Optional[int]
    gamma: Optional[float]
    lambda_: Optional[float]
    steps: Optional[int]
    status: str = STATUS_OK

    @property
    def pair_key(self) -> Tuple[Any, ...]:
        return (
            self.network,
            self.instance,
            self.method,
            self.protocol,
            self.mu,
            self.budget,
            self.repetition,
        )

    @property
    def sort_key(self) -> Tuple[Any, ...]:
        return self.pair_key + (self.mds_filtered,)

    def to_row(self) -> Dict[str, Any]:
        row = {f.name.rstrip("_"): getattr(self, f.name) for f in fields(self)}
        return row


def _frame(records: Sequence[RunRecord]) -> pd.DataFrame:
    frame = pd.DataFrame([r.to_row() for r in records], columns=list(COLUMNS))
    for col in _OPT_INT_COLUMNS + _INT_COLUMNS:
        frame[col] = frame[col].astype("Int64")
    for col in _FLOAT_COLUMNS + _OPT_FLOAT_COLUMNS:
        frame[col] = frame[col].astype("float64")
    frame["mds_filtered"] = frame["mds_filtered"].map({True: "true", False: "false"})
    return frame


def write_records_csv(records: Sequence[RunRecord]) -> str:
    """Serializes records in the given order; empty cells mark absent values."""
    buffer = io.StringIO()
    _frame(records).to_csv(buffer, index=False, na_rep="", lineterminator="\n")
    return buffer.getvalue()


def _none_if_na(value: Any) -> Any:
    return None if pd.isna(value) else value


def read_records_csv(text: str) -> List[RunRecord]:
    header = text.split("\n", 1)[0].strip()
    if tuple(header.split(",")) != COLUMNS:
        raise RecordsFormatError(f"unexpected header {header!r}")
    try:
        frame = pd.read_csv(
            io.StringIO(text),
            dtype={c: str for c in _STR_COLUMNS + ("mds_filtered",)},
            keep_default_na=False,
            float_precision="round_trip",
            na_values={c: [""] for c in _OPT_INT_COLUMNS + _OPT_FLOAT_COLUMNS},
        )
        for col in _INT_COLUMNS + _OPT_INT_COLUMNS:
            frame[col] = pd.to_numeric(frame[col], errors="raise").astype("Int64")
        for col in _FLOAT_COLUMNS + _OPT_FLOAT_COLUMNS:
            frame[col] = pd.to_numeric(frame[col], errors="raise").astype("float64")
    except (ValueError, TypeError) as exc:
        raise RecordsFormatError(f"non-numeric field: {exc}") from exc

    records: List[RunRecord] = []
    for row in frame.to_dict("records"):
        flag = row["mds_filtered"]
        if flag not in ("true", "false"):
            raise RecordsFormatError(f"mds_filtered must be true/false, got {flag!r}")
        opt = {c: _none_if_na(row[c]) for c in _OPT_INT_COLUMNS}
        gamma = _none_if_na(row["gamma"])
        lam = _none_if_na(row["lambda"])
        records.append(
            RunRecord(
                network=row["network"],
                network_type=row["network_type"],
                instance=int(row["instance"]),
                method=row["method"],
                mds_filtered=flag == "true",
                protocol=row["protocol"],
                mu=float(row["mu"]),
                budget=float(row["budget"]),
                repetition=int(row["repetition"]),
                seed_count=None if opt["seed_count"] is None else int(opt["seed_count"]),
                mds_size=None if opt["mds_size"] is None else int(opt["mds_size"]),
                gamma=None if gamma is None else float(gamma),
                lambda_=None if lam is None else float(lam),
                steps=None if opt["steps"] is None else int(opt["steps"]),
                status=row["status"],
            )
        )
    return records


# -- sidecars -----------------------------------------------------------------


@dataclass(frozen=True)
class SeedSetRecord:
    network: str
    network_type: str
    instance: int
    method: str
    protocol: str
    budget: float
    repetition: int
    mds_filtered: bool
    seeds: Tuple[Any, ...]

    @property
    def sort_key(self) -> Tuple[Any, ...]:
        return (
            self.network,
            self.instance,
            self.method,
            self.protocol,
            self.budget,
            self.repetition,
            self.mds_filtered,
        )


@dataclass(frozen=True)
class MdsDrawRecord:
    network: str
    network_type: str
    instance: int
    method: str
    protocol: str
    repetition: int
    n_actors: int
    greedy_size: int
    members: Tuple[Any, ...]
    timed_out: bool = False

    @property
    def sort_key(self) -> Tuple[Any, ...]:
        return (self.network, self.instance, self.method, self.protocol, self.repetition)


def _dump_jsonl(items: Iterable[Any]) -> str:
    lines = []
    for item in items:
        raw = {f.name: getattr(item, f.name) for f in fields(item)}
        for key, value in raw.items():
            if isinstance(value, tuple):
                raw[key] = list(value)
        lines.append(json.dumps(raw, ensure_ascii=False, sort_keys=True))
    return "".join(line + "\n" for line in lines)


def _load_jsonl(text: str, cls: type) -> List[Any]:
    out = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            raw = json.loads(line)
            for f in fields(cls):
                if isinstance(raw.get(f.name), list):
                    raw[f.name] = tuple(raw[f.name])
            out.append(cls(**raw))
        except (json.JSONDecodeError, TypeError) as exc:
            raise RecordsFormatError(f"line {line_no}: {exc}") from exc
    return out


def dump_seed_sets(items: Iterable[SeedSetRecord]) -> str:
    return _dump_jsonl(items)


def load_seed_sets(text: str) -> List[SeedSetRecord]:
    return _load_jsonl(text, SeedSetRecord)


def dump_mds_draws(items: Iterable[MdsDrawRecord]) -> str:
    return _dump_jsonl(items)


def load_mds_draws(text: str) -> List[MdsDrawRecord]:
    return _load_jsonl(text, MdsDrawRecord)


def write_text_atomic(path: str, text: str) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    os.replace(tmp, path)
    logger.info("records.written path=%s bytes=%d", path, len(text))


def write_bytes_atomic(path: str, data: bytes) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    tmp = path + ".tmp"
    with open(tmp, "wb") as f:
        f.write(data)
    os.replace(tmp, path)
    logger.info("records.written path=%s bytes=%d", path, len(data))


def read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as f:
        return f.read()
