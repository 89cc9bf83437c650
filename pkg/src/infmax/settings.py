"""
Environment-driven defaults. CLI flags and plan fields take precedence.
"""

import os


def _int_env(name: str, default: int) -> int:
    try:
        return int(os.getenv(name, str(default)))
    except ValueError:
        return default


def _float_env(name: str, default: float) -> float:
    try:
        return float(os.getenv(name, str(default)))
    except ValueError:
        return default


WORKERS = max(1, _int_env("INFMAX_WORKERS", os.cpu_count() or 1))
LOG_LEVEL = os.getenv("INFMAX_LOG_LEVEL", "INFO").upper()
# Blank means stdout only
LOG_DIR = os.getenv("INFMAX_LOG_DIR") or None

MDS_TIMEOUT_MIN_PER_1000 = _float_env("INFMAX_MDS_TIMEOUT_MIN_PER_1000", 5.0)
SIGNIFICANCE = _float_env("INFMAX_SIGNIFICANCE", 0.01)
# Materialized networks kept per worker process
NETWORK_CACHE_SIZE = max(1, _int_env("INFMAX_NETWORK_CACHE", 2))


def mds_timeout_seconds(n_actors: int, minutes_per_1000: float | None = None) -> float:
    """Refinement budget for local improvement, scaled with network size."""
    per_1000 = MDS_TIMEOUT_MIN_PER_1000 if minutes_per_1000 is None else minutes_per_1000
    return per_1000 * 60.0 * n_actors / 1000.0
