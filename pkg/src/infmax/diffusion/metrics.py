"""
Spreading metrics over a SpreadTrace.

gamma   share of initially inactive actors active at the end
lambda_ area under the activation curve, time and value scaled to [0, 1]
"""

import warnings
from typing import Tuple

import numpy as np

from .mltm import SpreadTrace


class DegenerateTraceWarning(UserWarning):
    """Seeds already cover every actor; metrics fall back to 0."""


def _inactive_at_start(trace: SpreadTrace) -> int:
    remaining = trace.n_actors - len(trace.seeds)
    if remaining <= 0:
        warnings.warn(
            "seed set covers all actors; metric defined as 0",
            DegenerateTraceWarning,
            stacklevel=3,
        )
    return remaining


def gamma(trace: SpreadTrace) -> float:
    remaining = _inactive_at_start(trace)
    if remaining <= 0:
        return 0.0
    return (len(trace.final) - len(trace.seeds)) / remaining


def activation_curve(trace: SpreadTrace) -> Tuple[np.ndarray, np.ndarray]:
    """Points (t/T, (|S_t| - |S_0|) / (|A| - |S_0|)); x is 0 when T = 0."""
    sizes = np.asarray(trace.sizes(), dtype=float)
    remaining = trace.n_actors - sizes[0]
    y = (sizes - sizes[0]) / remaining if remaining > 0 else np.zeros_like(sizes)
    t = np.arange(len(sizes), dtype=float)
    x = t / trace.steps if trace.steps else np.zeros_like(t)
    return x, y


def lambda_(trace: SpreadTrace) -> float:
    remaining = _inactive_at_start(trace)
    if remaining <= 0 or trace.steps == 0:
        return 0.0
    x, y = activation_curve(trace)
    return float(np.trapezoid(y, x))
