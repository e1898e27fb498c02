"""Feature ranking and top-k selection."""
from .rankers import rank, discretize, RANK_METHODS
from .selection import select_topk, run_selection, choose_k
from .export import ranking_csv, curve_csv

__all__ = [
    "rank",
    "discretize",
    "RANK_METHODS",
    "select_topk",
    "run_selection",
    "choose_k",
    "ranking_csv",
    "curve_csv"
]
