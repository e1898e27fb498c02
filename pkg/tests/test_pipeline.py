import json

import pandas as pd
import pytest

from apps.cli.main import main
from core.errors import IoFailure, NothingToReport
from core.ingest import write_canonical
from core.learn import load_model, predict
from core.models.catalog import build_catalog
from core.storage import LocalArtifactStore
from core.textstats import LanguageDetector
from pipelines.experiments import (
    ExperimentRunner,
    cmd_ablate,
    cmd_extract,
    cmd_rank,
    cmd_report,
    cmd_select,
    cmd_train,
)
from pipelines.experiments.artifacts import (
    ABLATION_CSV,
    CANONICAL_CACHE,
    EVALUATIONS_CSV,
    EXTRACTION_LOG,
    LABELS_CSV,
    MASK_CSV,
    MATRIX_CSV,
    RANKINGS_JSON,
    REPORT_JSON,
    SELECTION_CURVE_CSV,
    SELECTION_JSON,
    config_hash,
    model_key,
    ranking_csv_key,
)


class _EnglishOnly(LanguageDetector):
    def detect(self, text):
        return "en"


DETECTOR = _EnglishOnly()


def _read(config, key):
    return (config.output_dir / key).read_text(encoding="utf-8")


class TestExtract:
    def test_matrix_shape(self, synthetic_config_factory):
        config = synthetic_config_factory()
        table = cmd_extract(config, DETECTOR)
        assert table.n_rows == 60
        assert table.names == build_catalog("synthetic").names

        lines = _read(config, MATRIX_CSV).splitlines()
        assert lines[0].startswith(f"# config_hash={config_hash(config)}")
        assert lines[1].split(",") == table.names
        assert len(lines) == 62
        assert _read(config, LABELS_CSV).splitlines()[2].startswith("000000,")

        log = json.loads(_read(config, EXTRACTION_LOG))
        assert log["ingest"]["accounts_read"] == 60
        assert set(log["family_seconds"]) <= {"social", "stylometry", "readability", "platform", "temporal", "raw"}

    def test_same_matrix_for_any_thread_count(self, synthetic_config_factory):
        one = synthetic_config_factory("one", threads=1)
        two = synthetic_config_factory("two", threads=2)
        cmd_extract(one, DETECTOR)
        cmd_extract(two, DETECTOR)
        for key in (MATRIX_CSV, MASK_CSV, LABELS_CSV):
            assert _read(one, key) == _read(two, key)

    def test_cached_accounts_come_back_with_the_matrix(self, synthetic_config_factory):
        config = synthetic_config_factory()
        cmd_extract(config, DETECTOR)
        assert len(ExperimentRunner(config).table().accounts) == 60

    def test_cache_of_another_dataset_is_ignored(self, synthetic_config_factory, make_account):
        config = synthetic_config_factory()
        cmd_extract(config, DETECTOR)
        write_canonical([make_account()], {}, config.output_dir / CANONICAL_CACHE, dataset_id="cresci-17")
        assert ExperimentRunner(config).table().accounts == []

    def test_stages_need_a_matrix(self, synthetic_config_factory):
        with pytest.raises(IoFailure):
            cmd_select(synthetic_config_factory())


class TestStagedRun:
    def test_staged_equals_in_memory(self, synthetic_config_factory):
        staged = synthetic_config_factory("staged")
        cmd_extract(staged, DETECTOR)
        selection = cmd_select(staged)
        staged_reports = cmd_train(staged)

        runner = ExperimentRunner(synthetic_config_factory("memory"), DETECTOR)
        runner.extract()
        memory_selection = runner.selection()
        memory_reports = runner.train()

        assert memory_selection.chosen_features == selection.chosen_features
        assert [r.model_id for r in staged_reports] == [r.model_id for r in memory_reports]
        for a, b in zip(staged_reports, memory_reports):
            assert a.accuracy == b.accuracy
            assert a.auc == b.auc

    def test_outputs_written(self, synthetic_config_factory):
        config = synthetic_config_factory()
        cmd_extract(config, DETECTOR)
        cmd_select(config)
        reports = cmd_train(config)

        curve = _read(config, SELECTION_CURVE_CSV).splitlines()
        assert curve[1] == "k,accuracy,seconds"
        assert json.loads(_read(config, SELECTION_JSON))["selection"]["chosen_k"] >= 1
        assert (config.output_dir / model_key(reports[0].model_id)).exists()
        assert reports[0].accuracy.mean >= reports[-1].accuracy.mean
        assert _read(config, EVALUATIONS_CSV).splitlines()[1].startswith("model,accuracy,auc")

    def test_failed_stage_leaves_nothing(self, tmp_path):
        store = LocalArtifactStore(str(tmp_path))
        with pytest.raises(RuntimeError):
            with store.stage("boom") as staged:
                staged.write_text("partial/file.txt", "x")
                raise RuntimeError("stage failed")
        assert store.list() == []


class TestAblation:
    def test_content_signal_shows_in_content_column(self, synthetic_config_factory):
        config = synthetic_config_factory(
            n_accounts=80, signal="content", ablation_methods=["rf_importance"], models=["random_forest"],
        )
        runner = ExperimentRunner(config, DETECTOR)
        runner.extract()
        report = runner.ablate()

        row = report.rows[0]
        assert report.model_id == "random_forest"
        assert row.content >= 0.9
        assert row.combined >= 0.9
        assert row.account < row.content - 0.15
        assert set(row.chosen_k) == {"account", "content", "combined"}
        assert _read(config, ABLATION_CSV).splitlines()[1] == "method,account,content,combined"


class TestReport:
    def test_missing_directory(self, tmp_path):
        with pytest.raises(NothingToReport):
            cmd_report(tmp_path / "nowhere")

    def test_empty_directory(self, tmp_path):
        with pytest.raises(NothingToReport):
            cmd_report(tmp_path)

    def test_single_training_result(self, synthetic_config_factory):
        config = synthetic_config_factory(models=["random_forest"])
        runner = ExperimentRunner(config, DETECTOR)
        runner.extract()
        runner.train()

        report = cmd_report(config.output_dir)
        assert [e.model_id for e in report.evaluations] == ["random_forest"]
        assert report.rankings == []
        assert report.ingest.accounts_read == 60
        assert report.reference == {}
        assert json.loads(_read(config, REPORT_JSON))["evaluations"][0]["model_id"] == "random_forest"


class TestCommandLine:
    def test_unknown_dataset_is_a_config_error(self):
        assert main(["extract", "--dataset", "nope", "--seed", "1"]) == 2

    def test_dataset_without_seed(self):
        assert main(["extract", "--dataset", "synthetic"]) == 2

    @pytest.mark.parametrize("dataset", ["cresci-15", "cresci-17", "twibot-20"])
    def test_file_dataset_without_paths_is_a_config_error(self, dataset, tmp_path):
        assert main(["extract", "--dataset", dataset, "--seed", "1", "--out", str(tmp_path)]) == 2
        assert list(tmp_path.iterdir()) == []

    def test_unknown_log_level_is_a_config_error(self, monkeypatch, tmp_path):
        monkeypatch.setenv("BOTMINER_LOG_LEVEL", "LOUD")
        assert main(["extract", "--dataset", "synthetic", "--seed", "1", "--out", str(tmp_path)]) == 2

    def test_invalid_value(self, tmp_path):
        assert main(["extract", "--dataset", "synthetic", "--seed", "1", "--folds", "1",
                     "--out", str(tmp_path)]) == 2

    def test_nothing_to_report_is_a_data_error(self, tmp_path):
        assert main(["report", "--out", str(tmp_path)]) == 3

    def test_missing_config_file(self, tmp_path):
        assert main(["extract", "--config", str(tmp_path / "missing.toml")]) == 3

    def test_extract_from_config_file(self, synthetic_config_factory, tmp_path):
        config = synthetic_config_factory(n_accounts=20)
        path = tmp_path / "experiment.json"
        path.write_text(config.model_dump_json(), encoding="utf-8")
        assert main(["extract", "--config", str(path), "--max-tweets", "3"]) == 0
        assert (config.output_dir / MATRIX_CSV).exists()


class TestRankStage:
    def test_rank_writes_one_csv_per_method(self, synthetic_config_factory):
        config = synthetic_config_factory()
        cmd_extract(config, DETECTOR)
        rankings = cmd_rank(config, ["chi2", "fisher"], source="account")

        assert [r.method for r in rankings] == ["chi2", "fisher"]
        for ranking in rankings:
            assert len(ranking.scores) == len(build_catalog("synthetic").names)
            lines = _read(config, ranking_csv_key(ranking.method)).splitlines()
            assert lines[1] == "feature,score,source"
            top = _read(config, ranking_csv_key(ranking.method, "account")).splitlines()[2:]
            assert 0 < len(top) <= 15
            assert all(line.endswith(",account") for line in top)
        assert json.loads(_read(config, RANKINGS_JSON))["stage"] == "rank"

    def test_staged_ablation(self, synthetic_config_factory):
        config = synthetic_config_factory(ablation_methods=["fisher"], models=["knn"])
        cmd_extract(config, DETECTOR)
        report = cmd_ablate(config)
        assert report.model_id == "knn"
        assert [row.method for row in report.rows] == ["fisher"]


def _drop_timings(value):
    if isinstance(value, dict):
        return {k: _drop_timings(v) for k, v in value.items() if "seconds" not in k}
    if isinstance(value, list):
        return [_drop_timings(v) for v in value]
    return value


def _csv_without_timings(text):
    lines = text.splitlines()
    header_at = 1 if lines and lines[0].startswith("#") else 0
    header = lines[header_at].split(",")
    keep = [i for i, name in enumerate(header) if "seconds" not in name]
    body = [",".join(line.split(",")[i] for i in keep) for line in lines[header_at:]]
    return lines[:header_at] + body


def _outputs(root):
    matrix = pd.read_csv(root / MATRIX_CSV, skiprows=1)
    outputs = {}
    for path in sorted(p for p in root.rglob("*") if p.is_file()):
        key = path.relative_to(root).as_posix()
        if path.suffix == ".json":
            outputs[key] = _drop_timings(json.loads(path.read_text(encoding="utf-8")))
        elif path.suffix == ".csv":
            outputs[key] = _csv_without_timings(path.read_text(encoding="utf-8"))
        elif path.suffix == ".joblib":
            model = load_model(path)
            _, scores = predict(model, matrix[list(model.feature_names)].to_numpy())
            outputs[key] = (model.model_id, model.feature_names, scores.tolist())
        else:
            outputs[key] = path.read_bytes()
    return outputs


class TestDeterminism:
    def test_full_pipeline_for_any_run_and_thread_count(self, synthetic_config_factory):
        runs = []
        for name, threads in (("first", 1), ("eight", 8), ("again", 1)):
            config = synthetic_config_factory(
                name, threads=threads, models=["random_forest", "knn"], ablation_methods=["fisher"],
            )
            ExperimentRunner(config, DETECTOR).run(source="account")
            runs.append(_outputs(config.output_dir))

        assert runs[0] == runs[1] == runs[2]
        assert {MATRIX_CSV, SELECTION_CURVE_CSV, ABLATION_CSV, REPORT_JSON} <= set(runs[0])
        assert any(key.endswith(".joblib") for key in runs[0])
