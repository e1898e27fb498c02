"""Configuration and output schemas."""
from .config import (
    DatasetManifest,
    ExperimentConfig,
    CvSpec,
    BinSpec,
    SelectionSpec,
    SyntheticSpec,
    MODEL_IDS,
    preset_manifest,
    load_manifest,
    load_experiment_config,
    build_experiment_config
)
from .outputs import (
    REPORT_SCHEMA_VERSION,
    Provenance,
    IngestReport,
    FeatureScore,
    RankingResult,
    CurvePoint,
    SelectionResult,
    MetricSummary,
    EvaluationReport,
    AblationRow,
    AblationReport,
    StageDocument,
    ConsolidatedReport
)
from .reference import REFERENCE_RESULTS, reference_for

__all__ = [
    "DatasetManifest",
    "ExperimentConfig",
    "CvSpec",
    "BinSpec",
    "SelectionSpec",
    "SyntheticSpec",
    "MODEL_IDS",
    "preset_manifest",
    "load_manifest",
    "load_experiment_config",
    "build_experiment_config",
    "REPORT_SCHEMA_VERSION",
    "Provenance",
    "IngestReport",
    "FeatureScore",
    "RankingResult",
    "CurvePoint",
    "SelectionResult",
    "MetricSummary",
    "EvaluationReport",
    "AblationRow",
    "AblationReport",
    "StageDocument",
    "ConsolidatedReport",
    "REFERENCE_RESULTS",
    "reference_for"
]
