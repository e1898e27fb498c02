"""
Pydantic schemas for every result document the pipeline writes.
These keep JSON outputs schema-validated and stable across runs.
"""
from typing import Dict, List, Optional

from pydantic import BaseModel, Field

REPORT_SCHEMA_VERSION = "botminer-report/v1"


class Provenance(BaseModel):
    """Stamped on every output file."""
    config_hash: str
    seed: int
    dataset_id: str
    schema_version: str = REPORT_SCHEMA_VERSION


class IngestReport(BaseModel):
    """Counts collected while reading a dataset."""
    accounts_read: int = 0
    tweets_read: int = 0
    rows_rejected: int = 0
    per_class_counts: Dict[str, int] = Field(default_factory=dict)
    tweetless_classes: List[str] = Field(default_factory=list)


class FeatureScore(BaseModel):
    feature: str
    score: float
    source: str


class RankingResult(BaseModel):
    """Feature scores sorted descending; ties keep catalog order."""
    method: str
    scores: List[FeatureScore]
    seed: int

    @property
    def ordered_features(self) -> List[str]:
        return [s.feature for s in self.scores]

    def top(self, k: int) -> List[str]:
        return self.ordered_features[:k]


class CurvePoint(BaseModel):
    k: int
    mean_accuracy: float
    runtime_seconds: float


class SelectionResult(BaseModel):
    ranking: RankingResult
    accuracy_curve: List[CurvePoint]
    chosen_k: int
    chosen_features: List[str]


class MetricSummary(BaseModel):
    mean: float
    std: float


class EvaluationReport(BaseModel):
    """Fold-averaged metrics for one model."""
    model_id: str
    folds: int
    accuracy: MetricSummary
    auc: MetricSummary
    recall: MetricSummary
    precision: MetricSummary
    f1: MetricSummary
    train_time_seconds: float
    undefined_metrics: Dict[str, int] = Field(
        default_factory=dict,
        description="Per metric, number of folds where it was undefined and reported as 0"
    )


class AblationRow(BaseModel):
    """Ablation accuracies per feature source; None = no features of that source."""
    method: str
    account: Optional[float] = None
    content: Optional[float] = None
    combined: Optional[float] = None
    chosen_k: Dict[str, int] = Field(default_factory=dict)


class AblationReport(BaseModel):
    provenance: Provenance
    model_id: str
    rows: List[AblationRow]


class StageDocument(BaseModel):
    """Envelope for per-stage JSON outputs."""
    provenance: Provenance
    stage: str
    rankings: List[RankingResult] = Field(default_factory=list)
    selection: Optional[SelectionResult] = None
    evaluations: List[EvaluationReport] = Field(default_factory=list)
    ingest: Optional[IngestReport] = None
    family_seconds: Dict[str, float] = Field(default_factory=dict)


class ConsolidatedReport(BaseModel):
    """Everything found in an output directory, merged."""
    schema_version: str = REPORT_SCHEMA_VERSION
    provenance: List[Provenance] = Field(default_factory=list)
    ingest: Optional[IngestReport] = None
    rankings: List[RankingResult] = Field(default_factory=list)
    selection: Optional[SelectionResult] = None
    evaluations: List[EvaluationReport] = Field(default_factory=list)
    ablation: Optional[AblationReport] = None
    reference: Dict[str, Dict[str, float]] = Field(default_factory=dict)
