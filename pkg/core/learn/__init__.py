"""Normalization, classifiers and model files."""
from .scaling import Scaler, normalize_fit, normalize_apply
from .models import Model, build_estimator, train, predict
from .serialization import save_model, load_model

__all__ = [
    "Scaler",
    "normalize_fit",
    "normalize_apply",
    "Model",
    "build_estimator",
    "train",
    "predict",
    "save_model",
    "load_model"
]
