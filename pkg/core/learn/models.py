"""
Classifier registry, training and prediction.

Bot (1) is the positive class; scores are class-1 probabilities.
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np
from sklearn.base import ClassifierMixin
from sklearn.dummy import DummyClassifier
from sklearn.ensemble import ExtraTreesClassifier, RandomForestClassifier
from sklearn.linear_model import RidgeClassifier, SGDClassifier
from sklearn.naive_bayes import GaussianNB
from sklearn.neighbors import KNeighborsClassifier
from sklearn.tree import DecisionTreeClassifier

from core.errors import DegenerateLabels, SchemaMismatch, UnknownModel
from core.learn.scaling import Scaler
from core.schemas.config import MODEL_IDS

logger = logging.getLogger(__name__)

DEFAULT_TREES = 100


def _estimator(model_id: str, seed: int) -> ClassifierMixin:
    if model_id == "decision_tree":
        return DecisionTreeClassifier(criterion="gini", random_state=seed)
    if model_id == "random_forest":
        return RandomForestClassifier(
            n_estimators=DEFAULT_TREES, criterion="gini", max_features="sqrt",
            bootstrap=True, min_samples_leaf=1, random_state=seed,
        )
    if model_id == "extra_trees":
        return ExtraTreesClassifier(
            n_estimators=DEFAULT_TREES, max_features="sqrt", bootstrap=False, random_state=seed,
        )
    if model_id == "knn":
        return KNeighborsClassifier(n_neighbors=5)
    if model_id == "gaussian_nb":
        return GaussianNB()
    if model_id == "logistic_regression":
        return SGDClassifier(
            loss="log_loss", penalty="l2", alpha=1e-4, max_iter=500, tol=None, random_state=seed,
        )
    if model_id == "ridge":
        return RidgeClassifier()
    if model_id == "dummy_majority":
        return DummyClassifier(strategy="most_frequent")
    raise UnknownModel(f"Unknown model: {model_id}")


def build_estimator(model_id: str, hyperparams: Optional[Dict[str, Any]] = None, seed: int = 0) -> ClassifierMixin:
    if model_id not in MODEL_IDS:
        raise UnknownModel(f"Unknown model: {model_id}")
    estimator = _estimator(model_id, seed)
    if hyperparams:
        try:
            estimator.set_params(**hyperparams)
        except ValueError as e:
            raise UnknownModel(f"Invalid hyperparameters for {model_id}: {e}") from e
    return estimator


@dataclass
class Model:
    model_id: str
    estimator: ClassifierMixin
    feature_names: Tuple[str, ...]
    seed: int
    # applied before predicting when the model was trained on scaled rows
    scaler: Optional[Scaler] = None

    @property
    def has_scores(self) -> bool:
        return hasattr(self.estimator, "predict_proba")


def _check_labels(labels: np.ndarray) -> None:
    if np.unique(labels).size < 2:
        raise DegenerateLabels("Training labels contain a single class")


def train(
    model_id: str,
    matrix: np.ndarray,
    labels: np.ndarray,
    hyperparams: Optional[Dict[str, Any]] = None,
    seed: int = 0,
    feature_names: Optional[Sequence[str]] = None,
) -> Model:
    """
    Fit a classifier.

    Args:
        model_id: one of MODEL_IDS
        matrix: (n_samples, n_features) training matrix
        labels: 0/1 labels, 1 = bot
        hyperparams: estimator parameters overriding the defaults
        seed: random state for stochastic estimators
        feature_names: column names, checked again at prediction time
    """
    estimator = build_estimator(model_id, hyperparams, seed)
    labels = np.asarray(labels, dtype=int)
    _check_labels(labels)
    matrix = np.asarray(matrix, dtype=float)
    names = tuple(feature_names) if feature_names is not None else tuple(
        f"f{i}" for i in range(matrix.shape[1])
    )
    if len(names) != matrix.shape[1]:
        raise SchemaMismatch(f"{len(names)} feature names for {matrix.shape[1]} columns")
    estimator.fit(matrix, labels)
    return Model(model_id=model_id, estimator=estimator, feature_names=names, seed=seed)


def predict(
    model: Model,
    matrix: np.ndarray,
    feature_names: Optional[Sequence[str]] = None,
) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    """
    Predict labels and class-1 scores.

    Returns:
        (labels, scores); scores is None for models without probabilities
    """
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[1] != len(model.feature_names):
        raise SchemaMismatch(
            f"Model expects {len(model.feature_names)} columns, got {matrix.shape[-1] if matrix.ndim else 0}"
        )
    if feature_names is not None and tuple(feature_names) != model.feature_names:
        raise SchemaMismatch("Column order differs from the training matrix")

    if model.scaler is not None:
        matrix = model.scaler.apply(matrix)

    if not model.has_scores:
        return np.asarray(model.estimator.predict(matrix), dtype=int), None
    proba = model.estimator.predict_proba(matrix)
    classes = list(model.estimator.classes_)
    scores = proba[:, classes.index(1)] if 1 in classes else np.zeros(matrix.shape[0])
    return (scores >= 0.5).astype(int), scores
