"""
Output-directory layout and (de)serialization of stage artifacts.

Every CSV starts with a `#` provenance line; every JSON document carries a
`provenance` block. Report numbers are rounded to four decimals; the feature
matrix keeps full precision so later stages see exactly what extraction saw.
"""
import hashlib
import io
import json
from typing import Any, Dict, List, Optional

import pandas as pd
from pydantic import BaseModel

from core.errors import SchemaMismatch
from core.schemas.config import ExperimentConfig
from core.schemas.outputs import EvaluationReport, Provenance
from core.select.export import provenance_comment
from core.storage import ArtifactStore, StagedWrites
from pipelines.extraction import FeatureTable

CANONICAL_CACHE = "canonical.bmc"
MATRIX_CSV = "features/matrix.csv"
MASK_CSV = "features/mask.csv"
LABELS_CSV = "features/labels.csv"
EXTRACTION_LOG = "features/extraction_log.json"
RANKINGS_JSON = "rankings/rankings.json"
SELECTION_JSON = "selection/selection.json"
SELECTION_CURVE_CSV = "selection/curve.csv"
EVALUATIONS_JSON = "train/evaluations.json"
EVALUATIONS_CSV = "train/evaluations.csv"
ABLATION_JSON = "ablation/ablation.json"
ABLATION_CSV = "ablation/ablation.csv"
REPORT_JSON = "report/report.json"
REPORT_CURVE_CSV = "report/selection_curve.csv"

REPORT_DECIMALS = 4

# Fields that do not change results.
_HASH_EXCLUDED = {"output_dir", "threads"}


def ranking_csv_key(method: str, source: Optional[str] = None) -> str:
    return f"rankings/{method}.csv" if source is None else f"rankings/{method}_{source}_top15.csv"


def model_key(model_id: str) -> str:
    return f"train/{model_id}.joblib"


def report_ranking_key(method: str) -> str:
    return f"report/ranking_{method}.csv"


def config_hash(config: ExperimentConfig) -> str:
    """sha256 of the canonical config JSON."""
    payload = config.model_dump(mode="json", exclude=_HASH_EXCLUDED)
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def provenance_for(config: ExperimentConfig) -> Provenance:
    return Provenance(
        config_hash=config_hash(config),
        seed=config.seed,
        dataset_id=config.manifest.dataset_id,
    )


def round_floats(value: Any, decimals: int = REPORT_DECIMALS) -> Any:
    if isinstance(value, float):
        return round(value, decimals)
    if isinstance(value, dict):
        return {k: round_floats(v, decimals) for k, v in value.items()}
    if isinstance(value, list):
        return [round_floats(v, decimals) for v in value]
    return value


def dump_document(document: BaseModel) -> str:
    payload = round_floats(document.model_dump(mode="json"))
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def load_document(store: ArtifactStore, key: str, model: type) -> Optional[BaseModel]:
    if not store.exists(key):
        return None
    try:
        return model.model_validate_json(store.read_text(key))
    except ValueError as e:
        raise SchemaMismatch(f"{key}: {e}") from e


def _with_provenance(frame: pd.DataFrame, provenance: Provenance, float_format: Optional[str]) -> str:
    body = frame.to_csv(index=False, float_format=float_format, lineterminator="\n")
    return provenance_comment(provenance) + body


def _read_csv(text: str, **kwargs) -> pd.DataFrame:
    lines = text.splitlines(keepends=True)
    if lines and lines[0].startswith("#"):
        lines = lines[1:]
    return pd.read_csv(io.StringIO("".join(lines)), **kwargs)


def write_table(staged: StagedWrites, table: FeatureTable, provenance: Provenance) -> None:
    staged.write_text(
        MATRIX_CSV,
        _with_provenance(pd.DataFrame(table.matrix, columns=table.names), provenance, None),
    )
    staged.write_text(
        MASK_CSV,
        _with_provenance(pd.DataFrame(table.mask.astype(int), columns=table.names), provenance, None),
    )
    labels = pd.DataFrame({"account_id": table.account_ids, "label": table.labels})
    staged.write_text(LABELS_CSV, _with_provenance(labels, provenance, None))


def read_table(store: ArtifactStore, sources: Dict[str, str]) -> FeatureTable:
    """
    Read the extracted matrix back.

    Args:
        store: output directory
        sources: feature name -> "account"/"content", from the catalog

    Raises:
        SchemaMismatch: files disagree with each other or with the catalog
    """
    matrix = _read_csv(store.read_text(MATRIX_CSV), float_precision="round_trip")
    mask = _read_csv(store.read_text(MASK_CSV))
    labels = _read_csv(store.read_text(LABELS_CSV), dtype={"account_id": str})
    names = list(matrix.columns)
    unknown = [n for n in names if n not in sources]
    if unknown:
        raise SchemaMismatch(f"{MATRIX_CSV}: columns not in the catalog: {unknown[:5]}")
    if list(mask.columns) != names or len(mask) != len(matrix) or len(labels) != len(matrix):
        raise SchemaMismatch("feature matrix, mask and labels files disagree")
    return FeatureTable(
        names=names,
        sources=[sources[n] for n in names],
        account_ids=labels["account_id"].tolist(),
        labels=labels["label"].to_numpy(dtype=int),
        matrix=matrix.to_numpy(dtype=float),
        mask=mask.to_numpy(dtype=int).astype(bool),
    )


def evaluations_csv(evaluations: List[EvaluationReport], provenance: Provenance) -> str:
    rows = [
        {
            "model": e.model_id,
            "accuracy": e.accuracy.mean,
            "auc": e.auc.mean,
            "recall": e.recall.mean,
            "precision": e.precision.mean,
            "f1": e.f1.mean,
            "accuracy_std": e.accuracy.std,
            "train_seconds": e.train_time_seconds,
        }
        for e in evaluations
    ]
    return _with_provenance(pd.DataFrame(rows), provenance, f"%.{REPORT_DECIMALS}f")


def frame_csv(frame: pd.DataFrame, provenance: Provenance) -> str:
    return _with_provenance(frame, provenance, f"%.{REPORT_DECIMALS}f")
