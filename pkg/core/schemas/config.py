"""
Configuration schemas: dataset manifests and experiment configs.
Loaded from TOML or JSON and validated with pydantic.
"""
import json
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from core.errors import ConfigError, IoFailure, UnknownDataset
from core.models.records import COLOR_FIELDS, Label, as_utc, normalize_hex_color

DatasetFormat = Literal["cresci-csv", "twibot-json", "synthetic"]
RankMethod = Literal["chi2", "mutual_info", "fisher", "rf_importance"]

MODEL_IDS = (
    "decision_tree",
    "random_forest",
    "extra_trees",
    "knn",
    "gaussian_nb",
    "logistic_regression",
    "ridge",
    "dummy_majority",
)

# Legacy platform profile defaults.
DEFAULT_PLATFORM_COLORS: Dict[str, str] = {
    "profile_background_color": "C0DEED",
    "profile_link_color": "0084B4",
    "profile_sidebar_border_color": "C0DEED",
    "profile_sidebar_fill_color": "DDEEF6",
    "profile_text_color": "333333",
}
DEFAULT_BACKGROUND_IMAGE_MARKER = "images/themes/theme1/bg"


class SyntheticSpec(BaseModel):
    """Parameters of the seeded synthetic corpus generator."""
    n_accounts: int = Field(200, ge=2)
    bot_fraction: float = Field(0.5, gt=0.0, lt=1.0)
    tweets_per_account: int = Field(20, ge=0)
    signal: Literal["both", "account", "content", "none"] = "both"
    seed: int = 0


class DatasetManifest(BaseModel):
    """Where a dataset lives and how its raw classes map onto {human, bot}."""
    dataset_id: str
    format: DatasetFormat
    paths: Dict[str, str] = Field(default_factory=dict)
    class_mapping: Dict[str, Label] = Field(default_factory=dict)
    crawl_time: datetime
    platform_defaults: Dict[str, str] = Field(default_factory=lambda: dict(DEFAULT_PLATFORM_COLORS))
    default_background_image: str = DEFAULT_BACKGROUND_IMAGE_MARKER
    max_tweets_per_user: Optional[int] = Field(None, ge=1)
    synthetic: Optional[SyntheticSpec] = None

    @field_validator("crawl_time")
    @classmethod
    def _utc(cls, v: datetime) -> datetime:
        return as_utc(v)

    @field_validator("platform_defaults")
    @classmethod
    def _colors(cls, v: Dict[str, str]) -> Dict[str, str]:
        unknown = set(v) - set(COLOR_FIELDS)
        if unknown:
            raise ValueError(f"unknown color fields: {sorted(unknown)}")
        merged = dict(DEFAULT_PLATFORM_COLORS)
        merged.update({k: normalize_hex_color(c) or "" for k, c in v.items()})
        return merged

    @model_validator(mode="after")
    def _synthetic_defaults(self) -> "DatasetManifest":
        if self.format == "synthetic" and self.synthetic is None:
            self.synthetic = SyntheticSpec()
        return self

    def resolve_paths(self, base: Path) -> "DatasetManifest":
        resolved = {
            role: str(p if Path(p).is_absolute() else (base / p))
            for role, p in self.paths.items()
        }
        return self.model_copy(update={"paths": resolved})


class CvSpec(BaseModel):
    folds: int = Field(10, ge=2)
    stratified: bool = True
    seed: int = 0


class BinSpec(BaseModel):
    """Equal-frequency discretization used by the chi2 and MI rankers."""
    bins: int = Field(10, ge=1)


class SelectionSpec(BaseModel):
    method: RankMethod = "rf_importance"
    k_max: int = Field(40, ge=1)
    patience: int = Field(2, ge=1)


class ExperimentConfig(BaseModel):
    """One reproducible experiment: data, selection, evaluation and outputs."""
    manifest: DatasetManifest
    selection: SelectionSpec = Field(default_factory=SelectionSpec)
    cv: CvSpec = Field(default_factory=CvSpec)
    binning: BinSpec = Field(default_factory=BinSpec)
    models: List[str] = Field(default_factory=lambda: list(MODEL_IDS))
    hyperparams: Dict[str, Dict[str, Any]] = Field(default_factory=dict)
    seed: int
    output_dir: Path
    threads: Optional[int] = Field(None, ge=1)
    ablation_methods: List[RankMethod] = Field(default_factory=lambda: ["mutual_info", "rf_importance"])

    @field_validator("models")
    @classmethod
    def _known_models(cls, v: List[str]) -> List[str]:
        unknown = [m for m in v if m not in MODEL_IDS]
        if unknown:
            raise ValueError(f"unknown model ids: {unknown}")
        return v


_PRESETS: Dict[str, Dict[str, Any]] = {
    "cresci-15": {
        "format": "cresci-csv",
        "class_mapping": {
            "TFP": "human", "E13": "human",
            "FSF": "bot", "INT": "bot", "TWT": "bot",
        },
        "crawl_time": datetime(2015, 3, 1, tzinfo=timezone.utc),
    },
    "cresci-17": {
        "format": "cresci-csv",
        "class_mapping": {
            "genuine accounts": "human",
            "social spambots #1": "bot",
            "social spambots #2": "bot",
            "social spambots #3": "bot",
            "traditional spambots #1": "bot",
            "traditional spambots #2": "bot",
            "traditional spambots #3": "bot",
            "traditional spambots #4": "bot",
            "fake followers": "bot",
        },
        "crawl_time": datetime(2017, 1, 1, tzinfo=timezone.utc),
    },
    "twibot-20": {
        "format": "twibot-json",
        "class_mapping": {"0": "human", "1": "bot"},
        "crawl_time": datetime(2020, 9, 1, tzinfo=timezone.utc),
    },
    "synthetic": {
        "format": "synthetic",
        "class_mapping": {"human": "human", "bot": "bot"},
        "crawl_time": datetime(2020, 1, 1, tzinfo=timezone.utc),
    },
}


def preset_manifest(dataset_id: str, **overrides: Any) -> DatasetManifest:
    """Build a manifest from a built-in dataset preset plus overrides."""
    if dataset_id not in _PRESETS:
        raise UnknownDataset(f"Unknown dataset: {dataset_id}")
    data = dict(_PRESETS[dataset_id])
    data["dataset_id"] = dataset_id
    data.update({k: v for k, v in overrides.items() if v is not None})
    return DatasetManifest(**data)


def read_structured_file(path: Path) -> Dict[str, Any]:
    """Read a TOML or JSON mapping."""
    path = Path(path)
    if not path.exists():
        raise IoFailure(f"Config file not found: {path}")
    try:
        if path.suffix.lower() == ".json":
            with open(path, "r", encoding="utf-8") as f:
                return json.load(f)
        with open(path, "rb") as f:
            return tomllib.load(f)
    except (tomllib.TOMLDecodeError, json.JSONDecodeError) as e:
        raise ConfigError(f"Cannot parse {path}: {e}") from e


def load_manifest(path: Path) -> DatasetManifest:
    path = Path(path)
    data = read_structured_file(path)
    if "dataset_id" in data and data["dataset_id"] in _PRESETS:
        base = dict(_PRESETS[data["dataset_id"]])
        base.update(data)
        data = base
    try:
        manifest = DatasetManifest(**data)
    except ValidationError as e:
        raise ConfigError(f"Invalid manifest {path}: {e}") from e
    return manifest.resolve_paths(path.parent)


def load_experiment_config(path: Path, overrides: Optional[Dict[str, Any]] = None) -> ExperimentConfig:
    """
    Load an experiment config file and apply flag overrides.

    Args:
        path: TOML/JSON file; `manifest` may be inline or given as `manifest_path`
        overrides: dotted keys (e.g. "selection.k_max") to values; None values are ignored

    Returns:
        Validated ExperimentConfig with paths resolved against the file's directory
    """
    path = Path(path)
    data = read_structured_file(path)
    base = path.parent
    manifest_path = data.pop("manifest_path", None)
    if manifest_path is not None:
        data["manifest"] = load_manifest(base / manifest_path).model_dump(mode="json")
    elif isinstance(data.get("manifest"), dict):
        inline = data["manifest"]
        if inline.get("dataset_id") in _PRESETS:
            preset = dict(_PRESETS[inline["dataset_id"]])
            preset.update(inline)
            inline = preset
        try:
            data["manifest"] = DatasetManifest(**inline).resolve_paths(base).model_dump(mode="json")
        except ValidationError as e:
            raise ConfigError(f"Invalid manifest in {path}: {e}") from e
    if "output_dir" in data and not Path(data["output_dir"]).is_absolute():
        data["output_dir"] = str(base / data["output_dir"])
    return build_experiment_config(data, overrides)


def build_experiment_config(data: Dict[str, Any], overrides: Optional[Dict[str, Any]] = None) -> ExperimentConfig:
    data = json.loads(json.dumps(data, default=str))
    for dotted, value in (overrides or {}).items():
        if value is None:
            continue
        node = data
        *parents, leaf = dotted.split(".")
        for key in parents:
            node = node.setdefault(key, {})
        node[leaf] = value
    try:
        return ExperimentConfig(**data)
    except ValidationError as e:
        raise ConfigError(f"Invalid experiment config: {e}") from e
