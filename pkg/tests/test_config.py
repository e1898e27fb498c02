from pathlib import Path

import pytest

from core.errors import ConfigError, IoFailure, UnknownDataset
from core.schemas.config import (
    DatasetManifest,
    build_experiment_config,
    load_experiment_config,
    preset_manifest,
)
from core.schemas.reference import reference_for
from pipelines.experiments.artifacts import config_hash, round_floats

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


class TestExperimentConfig:
    def test_shipped_synthetic_config(self):
        config = load_experiment_config(CONFIGS / "synthetic.toml")
        assert config.manifest.format == "synthetic"
        assert config.manifest.synthetic.n_accounts == 300
        assert config.output_dir == (CONFIGS / "../results/synthetic")
        assert config.cv.folds == 10

    @pytest.mark.parametrize("name", ["cresci-15", "cresci-17", "twibot-20"])
    def test_shipped_dataset_configs_resolve_paths(self, name):
        config = load_experiment_config(CONFIGS / f"{name}.toml")
        assert config.manifest.dataset_id == name
        assert config.manifest.max_tweets_per_user == 200
        assert all(Path(p).is_absolute() for p in config.manifest.paths.values())

    def test_overrides(self):
        config = load_experiment_config(CONFIGS / "synthetic.toml", {
            "selection.k_max": 5, "cv.folds": 3, "models": ["knn"], "seed": None,
        })
        assert config.selection.k_max == 5
        assert config.cv.folds == 3
        assert config.models == ["knn"]
        assert config.seed == 7

    def test_toml_manifest_reference(self, tmp_path):
        (tmp_path / "m.toml").write_text('dataset_id = "twibot-20"\n[paths]\ntrain = "train.json"\n')
        (tmp_path / "e.toml").write_text('manifest_path = "m.toml"\nseed = 1\noutput_dir = "out"\n')
        config = load_experiment_config(tmp_path / "e.toml")
        assert config.manifest.paths["train"] == str(tmp_path / "train.json")
        assert config.output_dir == tmp_path / "out"

    def test_unknown_model(self, tmp_path):
        with pytest.raises(ConfigError):
            build_experiment_config({
                "manifest": preset_manifest("synthetic").model_dump(mode="json"),
                "seed": 1, "output_dir": str(tmp_path), "models": ["svm"],
            })

    def test_missing_file(self, tmp_path):
        with pytest.raises(IoFailure):
            load_experiment_config(tmp_path / "nope.toml")

    def test_unparseable_file(self, tmp_path):
        path = tmp_path / "broken.toml"
        path.write_text("seed = = 1")
        with pytest.raises(ConfigError):
            load_experiment_config(path)


class TestManifest:
    def test_unknown_preset(self):
        with pytest.raises(UnknownDataset):
            preset_manifest("cresci-99")

    def test_platform_defaults_merge(self):
        manifest = preset_manifest("cresci-15", platform_defaults={"profile_text_color": "#abc"})
        assert manifest.platform_defaults["profile_text_color"] == "AABBCC"
        assert manifest.platform_defaults["profile_background_color"] == "C0DEED"

    def test_unknown_color_field(self):
        with pytest.raises(ValueError):
            preset_manifest("cresci-15", platform_defaults={"profile_hat_color": "FFFFFF"})

    def test_crawl_time_is_utc(self):
        manifest = DatasetManifest(dataset_id="x", format="synthetic", crawl_time="2020-01-01T00:00:00")
        assert manifest.crawl_time.utcoffset().total_seconds() == 0


class TestConfigHash:
    def test_output_dir_and_threads_do_not_count(self, synthetic_config_factory):
        a = synthetic_config_factory("a", threads=1)
        b = synthetic_config_factory("b", threads=4)
        assert config_hash(a) == config_hash(b)

    def test_seed_counts(self, synthetic_config_factory):
        assert config_hash(synthetic_config_factory(seed=1)) != config_hash(synthetic_config_factory(seed=2))


def test_report_rounding():
    assert round_floats({"a": [0.123456, 2], "b": 1.00004}) == {"a": [0.1235, 2], "b": 1.0}


class TestReferenceResults:
    @pytest.mark.parametrize("dataset_id, account, content, combined", [
        ("cresci-15", 0.9881, 0.9865, 0.9957),
        ("cresci-17", 0.9912, 0.9414, 0.9943),
        ("twibot-20", 0.7679, 0.6827, 0.8544),
    ])
    def test_ablation_figures(self, dataset_id, account, content, combined):
        assert reference_for(dataset_id)["ablation"] == {
            "account": account, "content": content, "combined": combined,
        }

    def test_unknown_dataset_has_no_reference(self):
        assert reference_for("synthetic") == {}
