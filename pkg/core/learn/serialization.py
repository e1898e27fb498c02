"""Versioned model files (joblib)."""
from pathlib import Path

import joblib

from core.errors import IoFailure, SchemaMismatch
from core.learn.models import Model

MODEL_FORMAT = "botminer-model/v1"


def save_model(model: Model, path: Path) -> Path:
    path = Path(path)
    payload = {
        "format": MODEL_FORMAT,
        "model_id": model.model_id,
        "feature_names": list(model.feature_names),
        "seed": model.seed,
        "scaler": model.scaler,
        "estimator": model.estimator,
    }
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        joblib.dump(payload, path)
    except OSError as e:
        raise IoFailure(f"Cannot write model {path}: {e}") from e
    return path


def load_model(path: Path) -> Model:
    path = Path(path)
    if not path.exists():
        raise IoFailure(f"Model file not found: {path}")
    payload = joblib.load(path)
    if not isinstance(payload, dict) or payload.get("format") != MODEL_FORMAT:
        found = payload.get("format") if isinstance(payload, dict) else type(payload).__name__
        raise SchemaMismatch(f"{path}: model format {found!r}, expected {MODEL_FORMAT!r}")
    return Model(
        model_id=payload["model_id"],
        estimator=payload["estimator"],
        feature_names=tuple(payload["feature_names"]),
        seed=payload["seed"],
        scaler=payload.get("scaler"),
    )
