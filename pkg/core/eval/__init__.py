"""Metrics and cross-validation."""
from .metrics import ConfusionMatrix, FoldMetrics, metrics, METRIC_NAMES
from .cross_validation import cross_validate, make_folds, run_fold, summarize

__all__ = [
    "ConfusionMatrix",
    "FoldMetrics",
    "metrics",
    "METRIC_NAMES",
    "cross_validate",
    "make_folds",
    "run_fold",
    "summarize"
]
