from .metrics import DegenerateTraceWarning, activation_curve, gamma, lambda_
from .mltm import (
    AND,
    OR,
    PROTOCOLS,
    MltmParams,
    SpreadTrace,
    actor_activates,
    node_positive_input,
    simulate,
    step,
)

__all__ = [
    "AND",
    "OR",
    "PROTOCOLS",
    "DegenerateTraceWarning",
    "MltmParams",
    "SpreadTrace",
    "activation_curve",
    "actor_activates",
    "gamma",
    "lambda_",
    "node_positive_input",
    "simulate",
    "step",
]
