"""
Feature ranking by chi-square, mutual information, Fisher score and
random-forest impurity importance.

Filter methods discretize each column first: columns with at most `bins`
distinct values keep their values as categories, others are cut into
`bins` equal-frequency bins.
"""
import logging
import math
from typing import Callable, Dict, List, Sequence

import numpy as np
import pandas as pd
from scipy.stats import chi2_contingency
from sklearn.ensemble import RandomForestClassifier
from sklearn.metrics import mutual_info_score

from core.errors import DegenerateLabels, EmptyDataset
from core.schemas.config import BinSpec
from core.schemas.outputs import FeatureScore, RankingResult

logger = logging.getLogger(__name__)

FISHER_EPSILON = 1e-12
RANK_METHODS = ("chi2", "mutual_info", "fisher", "rf_importance")


def discretize(column: np.ndarray, bins: int) -> np.ndarray:
    """Integer bin codes for one column."""
    uniques, codes = np.unique(column, return_inverse=True)
    if uniques.size <= bins:
        return codes
    return pd.qcut(column, q=bins, labels=False, duplicates="drop").astype(int)


def contingency(codes: np.ndarray, labels: np.ndarray) -> np.ndarray:
    table = pd.crosstab(codes, labels)
    return table.to_numpy()


def chi2_scores(matrix: np.ndarray, labels: np.ndarray, binning: BinSpec, seed: int) -> np.ndarray:
    scores = np.zeros(matrix.shape[1])
    for j in range(matrix.shape[1]):
        table = contingency(discretize(matrix[:, j], binning.bins), labels)
        if table.shape[0] < 2 or table.shape[1] < 2:
            continue
        scores[j] = chi2_contingency(table, correction=False)[0]
    return scores


def mutual_info_scores(matrix: np.ndarray, labels: np.ndarray, binning: BinSpec, seed: int) -> np.ndarray:
    """Mutual information in bits."""
    return np.array([
        mutual_info_score(labels, discretize(matrix[:, j], binning.bins)) / math.log(2)
        for j in range(matrix.shape[1])
    ])


def fisher_scores(matrix: np.ndarray, labels: np.ndarray, binning: BinSpec, seed: int) -> np.ndarray:
    """sum_c n_c (mu_c - mu)^2 / (sum_c n_c var_c + eps)"""
    mu = matrix.mean(axis=0)
    between = np.zeros(matrix.shape[1])
    within = np.zeros(matrix.shape[1])
    for c in np.unique(labels):
        rows = matrix[labels == c]
        between += rows.shape[0] * (rows.mean(axis=0) - mu) ** 2
        within += rows.shape[0] * rows.var(axis=0)
    return between / (within + FISHER_EPSILON)


def rf_importance_scores(matrix: np.ndarray, labels: np.ndarray, binning: BinSpec, seed: int) -> np.ndarray:
    forest = RandomForestClassifier(
        n_estimators=100, criterion="gini", max_features="sqrt", random_state=seed
    ).fit(matrix, labels)
    importances = forest.feature_importances_
    # No split anywhere (every column constant): spread the mass evenly.
    if not importances.sum() > 0:
        return np.full(matrix.shape[1], 1.0 / matrix.shape[1])
    return importances


_RANKERS: Dict[str, Callable[[np.ndarray, np.ndarray, BinSpec, int], np.ndarray]] = {
    "chi2": chi2_scores,
    "mutual_info": mutual_info_scores,
    "fisher": fisher_scores,
    "rf_importance": rf_importance_scores,
}


def rank(
    matrix: np.ndarray,
    labels: Sequence[int],
    method: str,
    feature_names: Sequence[str],
    sources: Sequence[str],
    binning: BinSpec = BinSpec(),
    seed: int = 0,
) -> RankingResult:
    """
    Score and order every feature.

    Args:
        matrix: (n_samples, n_features) matrix in catalog order
        labels: 0/1 labels
        method: chi2, mutual_info, fisher or rf_importance
        feature_names: column names, catalog order
        sources: "account"/"content" per column
        binning: discretization for chi2 and mutual_info
        seed: forest seed for rf_importance

    Returns:
        RankingResult sorted by descending score; ties keep catalog order
    """
    if method not in _RANKERS:
        raise ValueError(f"Unknown ranking method: {method}")
    matrix = np.asarray(matrix, dtype=float)
    labels = np.asarray(labels, dtype=int)
    if matrix.size == 0:
        raise EmptyDataset("Cannot rank features of an empty matrix")
    if np.unique(labels).size < 2:
        raise DegenerateLabels("Ranking needs both classes")

    raw = _RANKERS[method](matrix, labels, binning, seed)
    scores: List[float] = [float(s) if math.isfinite(s) else 0.0 for s in raw]
    order = sorted(range(len(scores)), key=lambda j: (-scores[j], j))
    logger.debug("[%s] ranked %d features", method, len(scores))
    return RankingResult(
        method=method,
        seed=seed,
        scores=[
            FeatureScore(feature=feature_names[j], score=scores[j], source=sources[j])
            for j in order
        ],
    )
