"""
Iterative top-k selection.

Adds features in ranking order, evaluating a random forest under
cross-validation at each k, and stops after `patience` consecutive k
values fail to beat the best accuracy so far.
"""
import logging
import time
from typing import Callable, List, Optional, Sequence

import numpy as np

from core.eval.cross_validation import Fold, cross_validate, make_folds
from core.features.colors import ColorRefitter
from core.schemas.config import CvSpec
from core.schemas.outputs import CurvePoint, RankingResult, SelectionResult

logger = logging.getLogger(__name__)

SELECTION_MODEL = "random_forest"

# Returns mean accuracy for a list of feature names.
SubsetScorer = Callable[[List[str]], float]


def choose_k(curve: Sequence[CurvePoint]) -> int:
    """Argmax of accuracy; the smallest k wins ties."""
    best = max(curve, key=lambda p: (p.mean_accuracy, -p.k))
    return best.k


def run_selection(
    ranking: RankingResult,
    scorer: SubsetScorer,
    k_max: int,
    patience: int = 2,
) -> SelectionResult:
    """Apply the stopping rule to a scorer; independent of how subsets are scored."""
    ordered = ranking.ordered_features
    limit = min(k_max, len(ordered))
    curve: List[CurvePoint] = []
    best = float("-inf")
    misses = 0
    for k in range(1, limit + 1):
        start = time.perf_counter()
        accuracy = float(scorer(ordered[:k]))
        curve.append(CurvePoint(k=k, mean_accuracy=accuracy, runtime_seconds=time.perf_counter() - start))
        logger.info("[%s] k=%d accuracy=%.4f", ranking.method, k, accuracy)
        if accuracy > best:
            best = accuracy
            misses = 0
        else:
            misses += 1
            if misses >= patience:
                break
    chosen_k = choose_k(curve)
    return SelectionResult(
        ranking=ranking,
        accuracy_curve=curve,
        chosen_k=chosen_k,
        chosen_features=ordered[:chosen_k],
    )


def select_topk(
    matrix: np.ndarray,
    labels: Sequence[int],
    ranking: RankingResult,
    feature_names: Sequence[str],
    k_max: int,
    patience: int,
    cv: CvSpec,
    seed: int = 0,
    color_refitter: Optional[ColorRefitter] = None,
    threads: int = 1,
) -> SelectionResult:
    """
    Select the best-scoring prefix of a ranking.

    Folds are fixed once per call, so every k is evaluated on the same split.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    matrix = np.asarray(matrix, dtype=float)
    labels = np.asarray(labels, dtype=int)
    column = {name: j for j, name in enumerate(feature_names)}
    folds: List[Fold] = make_folds(labels, cv)

    def scorer(subset: List[str]) -> float:
        report = cross_validate(
            SELECTION_MODEL,
            matrix[:, [column[name] for name in subset]],
            labels,
            cv,
            seed=seed,
            feature_names=subset,
            color_refitter=color_refitter,
            folds=folds,
            threads=threads,
        )
        return report.accuracy.mean

    return run_selection(ranking, scorer, k_max, patience)
