"""
Confusion-matrix metrics and AUC.

Undefined ratios (zero denominator, or AUC without scores or without
both classes) are reported as 0 and listed in `undefined`.
"""
from dataclasses import dataclass, field
from typing import FrozenSet, Optional, Sequence

import numpy as np
from sklearn.metrics import confusion_matrix, roc_auc_score

METRIC_NAMES = ("accuracy", "auc", "recall", "precision", "f1")


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int = 0
    tn: int = 0
    fp: int = 0
    fn: int = 0

    def __post_init__(self):
        if min(self.tp, self.tn, self.fp, self.fn) < 0:
            raise ValueError("confusion-matrix cells must be non-negative")

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn

    @classmethod
    def from_predictions(cls, y_true: Sequence[int], y_pred: Sequence[int]) -> "ConfusionMatrix":
        tn, fp, fn, tp = confusion_matrix(y_true, y_pred, labels=[0, 1]).ravel()
        return cls(tp=int(tp), tn=int(tn), fp=int(fp), fn=int(fn))


@dataclass(frozen=True)
class FoldMetrics:
    accuracy: float
    precision: float
    recall: float
    f1: float
    auc: float
    undefined: FrozenSet[str] = field(default_factory=frozenset)

    def get(self, name: str) -> float:
        return getattr(self, name)


def _ratio(num: int, den: int) -> Optional[float]:
    return num / den if den else None


def metrics(cm: ConfusionMatrix, scores: Optional[Sequence[float]], labels: Sequence[int]) -> FoldMetrics:
    """
    Compute accuracy, precision, recall (tp / (tp + fn)), F1 and AUC.

    Args:
        cm: confusion matrix with total > 0
        scores: class-1 scores aligned with labels, or None for score-less models
        labels: true 0/1 labels
    """
    if cm.total == 0:
        raise ValueError("metrics need a non-empty confusion matrix")
    undefined = set()

    precision = _ratio(cm.tp, cm.tp + cm.fp)
    recall = _ratio(cm.tp, cm.tp + cm.fn)
    if precision is None:
        undefined.add("precision")
    if recall is None:
        undefined.add("recall")
    precision = precision or 0.0
    recall = recall or 0.0
    if precision + recall > 0:
        f1 = 2 * precision * recall / (precision + recall)
    else:
        f1 = 0.0
        undefined.add("f1")

    labels = np.asarray(labels, dtype=int)
    if scores is None or np.unique(labels).size < 2:
        auc = 0.0
        undefined.add("auc")
    else:
        auc = float(roc_auc_score(labels, np.asarray(scores, dtype=float)))

    return FoldMetrics(
        accuracy=(cm.tp + cm.tn) / cm.total,
        precision=precision,
        recall=recall,
        f1=f1,
        auc=auc,
        undefined=frozenset(undefined),
    )
