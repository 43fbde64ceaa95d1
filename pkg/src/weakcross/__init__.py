"""Exact verification of weak crossed biproducts and their product and
coproduct halves over the rationals, with finite groupoids as the worked
model."""
from .linalg import (
    LinMap,
    NotIdempotentError,
    Rational,
    ShapeError,
    Splitting,
    compose,
    flip,
    identity,
    split_idempotent,
    tensor,
    zero,
)
from .report import Check, ConditionError, Report

__version__ = "0.1.0"

__all__ = [
    "LinMap",
    "Rational",
    "ShapeError",
    "NotIdempotentError",
    "Splitting",
    "compose",
    "flip",
    "identity",
    "split_idempotent",
    "tensor",
    "zero",
    "Check",
    "ConditionError",
    "Report",
]
