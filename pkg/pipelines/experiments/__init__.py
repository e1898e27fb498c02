"""Experiment stages."""
from .runner import (
    ExperimentRunner,
    cmd_extract,
    cmd_rank,
    cmd_select,
    cmd_train,
    cmd_ablate,
    cmd_report,
    cmd_run
)

__all__ = [
    "ExperimentRunner",
    "cmd_extract",
    "cmd_rank",
    "cmd_select",
    "cmd_train",
    "cmd_ablate",
    "cmd_report",
    "cmd_run"
]
