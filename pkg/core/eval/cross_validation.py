"""
Stratified k-fold evaluation harness.

Every fit (color model, scaler, classifier) sees training-fold rows only.
"""
import logging
import time
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed
from sklearn.model_selection import KFold, StratifiedKFold

from core.errors import StratificationFailure
from core.eval.metrics import METRIC_NAMES, ConfusionMatrix, FoldMetrics, metrics
from core.features.colors import ColorRefitter
from core.learn.models import predict, train
from core.learn.scaling import normalize_fit
from core.schemas.config import CvSpec
from core.schemas.outputs import EvaluationReport, MetricSummary

logger = logging.getLogger(__name__)

Fold = Tuple[np.ndarray, np.ndarray]


def make_folds(labels: Sequence[int], cv: CvSpec) -> List[Fold]:
    """
    Deterministic (train, test) index pairs.

    Raises:
        StratificationFailure: fewer samples than folds, or a class smaller
            than the fold count when stratifying
    """
    labels = np.asarray(labels, dtype=int)
    n = labels.shape[0]
    if not 2 <= cv.folds <= n:
        raise StratificationFailure(f"Need 2 <= folds <= samples, got folds={cv.folds}, samples={n}")
    if cv.stratified:
        smallest = int(np.bincount(labels, minlength=2).min())
        if smallest < cv.folds:
            raise StratificationFailure(
                f"Smallest class has {smallest} samples, fewer than {cv.folds} folds"
            )
        splitter = StratifiedKFold(n_splits=cv.folds, shuffle=True, random_state=cv.seed)
    else:
        splitter = KFold(n_splits=cv.folds, shuffle=True, random_state=cv.seed)
    return [(train_idx, test_idx) for train_idx, test_idx in splitter.split(np.zeros(n), labels)]


@dataclass
class FoldResult:
    metrics: FoldMetrics
    train_seconds: float


def run_fold(
    model_id: str,
    matrix: np.ndarray,
    labels: np.ndarray,
    fold: Fold,
    hyperparams: Optional[Dict[str, Any]],
    seed: int,
    feature_names: Sequence[str],
    color_refitter: Optional[ColorRefitter] = None,
) -> FoldResult:
    train_idx, test_idx = fold
    x_train, x_test = matrix[train_idx], matrix[test_idx]
    if color_refitter is not None:
        refitter = ColorRefitter(
            color_refitter.accounts, color_refitter.defaults, color_refitter.default_background_image
        ).fit(train_idx)
        x_train = refitter.transform(x_train, feature_names, train_idx)
        x_test = refitter.transform(x_test, feature_names, test_idx)

    scaler = normalize_fit(x_train, rows=train_idx)
    x_train = scaler.apply(x_train)
    x_test = scaler.apply(x_test)

    start = time.perf_counter()
    model = train(model_id, x_train, labels[train_idx], hyperparams, seed, feature_names)
    elapsed = time.perf_counter() - start

    predicted, scores = predict(model, x_test)
    cm = ConfusionMatrix.from_predictions(labels[test_idx], predicted)
    return FoldResult(metrics=metrics(cm, scores, labels[test_idx]), train_seconds=elapsed)


def summarize(model_id: str, results: Sequence[FoldResult]) -> EvaluationReport:
    summaries = {}
    for name in METRIC_NAMES:
        values = np.array([r.metrics.get(name) for r in results], dtype=float)
        summaries[name] = MetricSummary(mean=float(values.mean()), std=float(values.std()))
    undefined: Dict[str, int] = {}
    for r in results:
        for name in r.metrics.undefined:
            undefined[name] = undefined.get(name, 0) + 1
    return EvaluationReport(
        model_id=model_id,
        folds=len(results),
        train_time_seconds=float(sum(r.train_seconds for r in results)),
        undefined_metrics=dict(sorted(undefined.items())),
        **summaries,
    )


def cross_validate(
    model_id: str,
    matrix: np.ndarray,
    labels: Sequence[int],
    cv: CvSpec,
    hyperparams: Optional[Dict[str, Any]] = None,
    seed: int = 0,
    feature_names: Optional[Sequence[str]] = None,
    color_refitter: Optional[ColorRefitter] = None,
    folds: Optional[List[Fold]] = None,
    threads: int = 1,
) -> EvaluationReport:
    """
    Evaluate a model with k-fold cross-validation.

    Args:
        model_id: classifier id
        matrix: full feature matrix (rows aligned with labels)
        labels: 0/1 labels, 1 = bot
        cv: fold count, stratification and fold seed
        hyperparams: classifier parameter overrides
        seed: classifier random state
        feature_names: column names of matrix
        color_refitter: refits color-bin columns on each training fold when given
        folds: precomputed folds (reused across calls for a fixed split)
        threads: folds evaluated concurrently

    Returns:
        EvaluationReport with fold-mean and standard deviation per metric
    """
    matrix = np.asarray(matrix, dtype=float)
    labels = np.asarray(labels, dtype=int)
    names = list(feature_names) if feature_names is not None else [f"f{i}" for i in range(matrix.shape[1])]
    folds = folds if folds is not None else make_folds(labels, cv)

    results = Parallel(n_jobs=threads, prefer="threads")(
        delayed(run_fold)(model_id, matrix, labels, fold, hyperparams, seed, names, color_refitter)
        for fold in folds
    )
    report = summarize(model_id, results)
    logger.debug(
        "[%s] %d-fold accuracy %.4f (%d features)",
        model_id, report.folds, report.accuracy.mean, matrix.shape[1],
    )
    return report
