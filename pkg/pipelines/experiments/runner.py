"""
Experiment stages: extract → rank → select → train → ablate → report.

Each stage reads what earlier stages left in the output directory and
writes its own files through a staged store, so a failing stage leaves
nothing half-written behind.
"""
import logging
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import pandas as pd

from core.errors import IoFailure, NothingToReport
from core.eval import cross_validate, make_folds
from core.ingest import read_canonical, read_canonical_header, write_canonical
from core.learn import normalize_fit, save_model, train
from core.models.catalog import FeatureCatalog, build_catalog
from core.schemas.config import ExperimentConfig
from core.schemas.outputs import (
    AblationReport,
    AblationRow,
    ConsolidatedReport,
    EvaluationReport,
    Provenance,
    RankingResult,
    SelectionResult,
    StageDocument,
)
from core.schemas.reference import reference_for
from core.select import RANK_METHODS, curve_csv, rank, ranking_csv, select_topk
from core.storage import ArtifactStore, LocalArtifactStore
from core.textstats import LanguageDetector
from pipelines.experiments.artifacts import (
    ABLATION_CSV,
    ABLATION_JSON,
    CANONICAL_CACHE,
    EVALUATIONS_CSV,
    EVALUATIONS_JSON,
    EXTRACTION_LOG,
    MATRIX_CSV,
    RANKINGS_JSON,
    REPORT_DECIMALS,
    REPORT_CURVE_CSV,
    REPORT_JSON,
    SELECTION_CURVE_CSV,
    SELECTION_JSON,
    dump_document,
    evaluations_csv,
    frame_csv,
    load_document,
    model_key,
    provenance_for,
    ranking_csv_key,
    read_table,
    report_ranking_key,
    write_table,
)
from pipelines.extraction import BatchFeatureExtractor, FeatureTable
from pipelines.ingestion import ingest

logger = logging.getLogger(__name__)

ABLATION_MODEL = "random_forest"
ABLATION_SUBSETS = ("account", "content", "combined")
SOURCE_TOP = 15


class ExperimentRunner:
    """Runs the stages of one experiment config against its output directory."""

    def __init__(self, config: ExperimentConfig, detector: Optional[LanguageDetector] = None):
        self.config = config
        self.detector = detector
        self.threads = config.threads or 1
        self.store: ArtifactStore = LocalArtifactStore(str(config.output_dir))
        self.provenance: Provenance = provenance_for(config)
        self.catalog: FeatureCatalog = build_catalog(config.manifest.dataset_id)
        self._table: Optional[FeatureTable] = None

    @property
    def dataset_id(self) -> str:
        return self.config.manifest.dataset_id

    # ------------------------------------------------------------------ extract

    def extract(self) -> FeatureTable:
        """Ingest the dataset and write matrix, mask, labels, canonical cache and extraction log."""
        manifest = self.config.manifest
        with self.store.stage("extract") as staged:
            accounts, tweets, ingest_report = ingest(manifest)
            write_canonical(accounts, tweets, staged.reserve(CANONICAL_CACHE), dataset_id=self.dataset_id)
            table = BatchFeatureExtractor(threads=self.threads).process(
                accounts, tweets, self.catalog, manifest, self.detector
            )
            write_table(staged, table, self.provenance)
            staged.write_text(EXTRACTION_LOG, dump_document(StageDocument(
                provenance=self.provenance,
                stage="extract",
                ingest=ingest_report,
                family_seconds=table.family_seconds,
            )))
        self._table = table
        logger.info("[%s] wrote %d x %d feature matrix", self.dataset_id, table.n_rows, len(table.names))
        return table

    def table(self) -> FeatureTable:
        """The extracted matrix, from memory or from the output directory."""
        if self._table is not None:
            return self._table
        if not self.store.exists(MATRIX_CSV):
            raise IoFailure(f"[{self.dataset_id}] no feature matrix in {self.config.output_dir}; run extract first")
        table = read_table(self.store, {f.name: f.source.value for f in self.catalog})
        if self.store.exists(CANONICAL_CACHE):
            cache = self.store.path(CANONICAL_CACHE)
            cached_id = read_canonical_header(cache).get("dataset_id")
            if cached_id != self.dataset_id:
                logger.warning("[%s] canonical cache holds dataset %r; ignoring it", self.dataset_id, cached_id)
            else:
                accounts, _ = read_canonical(cache)
                by_id = {a.id: a for a in accounts}
                if all(i in by_id for i in table.account_ids):
                    table.accounts = [by_id[i] for i in table.account_ids]
        if not table.accounts:
            logger.warning("[%s] canonical cache unavailable; color bins are not refitted per fold", self.dataset_id)
        self._table = table
        return table

    # --------------------------------------------------------------------- rank

    def rank(self, methods: Optional[Sequence[str]] = None, source: Optional[str] = None) -> List[RankingResult]:
        """Rank every feature with each method; `source` adds a top-15 list for one source."""
        table = self.table()
        rankings = [
            rank(table.matrix, table.labels, method, table.names, table.sources,
                 self.config.binning, self.config.seed)
            for method in (methods or RANK_METHODS)
        ]
        with self.store.stage("rank") as staged:
            for ranking in rankings:
                staged.write_text(ranking_csv_key(ranking.method), ranking_csv(ranking, self.provenance))
                if source is not None:
                    staged.write_text(
                        ranking_csv_key(ranking.method, source),
                        ranking_csv(ranking, self.provenance, sources=[source], limit=SOURCE_TOP),
                    )
            staged.write_text(RANKINGS_JSON, dump_document(StageDocument(
                provenance=self.provenance, stage="rank", rankings=rankings,
            )))
        for ranking in rankings:
            logger.info("[%s] %s top features: %s", self.dataset_id, ranking.method, ", ".join(ranking.top(5)))
        return rankings

    # ------------------------------------------------------------------- select

    def _select(self, table: FeatureTable, names: Sequence[str], method: str) -> SelectionResult:
        matrix = table.columns(names)
        sources = [table.sources[table.names.index(n)] for n in names]
        ranking = rank(matrix, table.labels, method, names, sources, self.config.binning, self.config.seed)
        spec = self.config.selection
        return select_topk(
            matrix, table.labels, ranking, names, spec.k_max, spec.patience, self.config.cv,
            seed=self.config.seed,
            color_refitter=table.color_refitter(self.config.manifest),
            threads=self.threads,
        )

    def select(self) -> SelectionResult:
        """Iterative top-k selection with the configured ranking method."""
        table = self.table()
        selection = self._select(table, table.names, self.config.selection.method)
        with self.store.stage("select") as staged:
            staged.write_text(SELECTION_JSON, dump_document(StageDocument(
                provenance=self.provenance, stage="select", selection=selection,
            )))
            staged.write_text(SELECTION_CURVE_CSV, curve_csv(selection, self.provenance))
        logger.info("[%s] chose k=%d: %s", self.dataset_id, selection.chosen_k, ", ".join(selection.chosen_features))
        return selection

    def selection(self) -> SelectionResult:
        """Saved selection of this config, or a fresh one."""
        document = load_document(self.store, SELECTION_JSON, StageDocument)
        if (document is not None and document.selection is not None
                and document.provenance.config_hash == self.provenance.config_hash):
            return document.selection
        logger.info("[%s] no matching selection on disk; selecting now", self.dataset_id)
        table = self.table()
        return self._select(table, table.names, self.config.selection.method)

    # -------------------------------------------------------------------- train

    def _evaluate(self, table: FeatureTable, features: Sequence[str], model_ids: Sequence[str]) -> List[EvaluationReport]:
        folds = make_folds(table.labels, self.config.cv)
        matrix = table.columns(features)
        refitter = table.color_refitter(self.config.manifest)
        reports = [
            cross_validate(
                model_id, matrix, table.labels, self.config.cv,
                hyperparams=self.config.hyperparams.get(model_id),
                seed=self.config.seed,
                feature_names=list(features),
                color_refitter=refitter,
                folds=folds,
                threads=self.threads,
            )
            for model_id in model_ids
        ]
        return sorted(reports, key=lambda r: (-r.accuracy.mean, r.model_id))

    def train(self) -> List[EvaluationReport]:
        """Cross-validate every configured model on the selected features; best first."""
        table = self.table()
        features = self.selection().chosen_features
        reports = self._evaluate(table, features, self.config.models)

        best = reports[0].model_id
        matrix = table.columns(features)
        scaler = normalize_fit(matrix)
        model = train(best, scaler.apply(matrix), table.labels, self.config.hyperparams.get(best),
                      self.config.seed, features)
        model.scaler = scaler

        with self.store.stage("train") as staged:
            staged.write_text(EVALUATIONS_JSON, dump_document(StageDocument(
                provenance=self.provenance, stage="train", evaluations=reports,
            )))
            staged.write_text(EVALUATIONS_CSV, evaluations_csv(reports, self.provenance))
            save_model(model, staged.reserve(model_key(best)))
        for report in reports:
            logger.info("[%s] %-20s accuracy %.4f auc %.4f", self.dataset_id,
                        report.model_id, report.accuracy.mean, report.auc.mean)
        return reports

    # ------------------------------------------------------------------- ablate

    def _ablation_run(self, table: FeatureTable, names: Sequence[str], method: str, model_id: str) -> Tuple[float, int]:
        selection = self._select(table, names, method)
        report = self._evaluate(table, selection.chosen_features, [model_id])[0]
        return report.accuracy.mean, selection.chosen_k

    def ablate(self) -> AblationReport:
        """Select and evaluate on account-only, content-only and combined features."""
        table = self.table()
        model_id = ABLATION_MODEL if ABLATION_MODEL in self.config.models else self.config.models[0]
        rows: List[AblationRow] = []
        for method in self.config.ablation_methods:
            row = AblationRow(method=method)
            for subset in ABLATION_SUBSETS:
                names = [n for n, s in zip(table.names, table.sources) if subset == "combined" or s == subset]
                if not names:
                    logger.warning("[%s] no %s features; ablation column unavailable", self.dataset_id, subset)
                    continue
                accuracy, k = self._ablation_run(table, names, method, model_id)
                setattr(row, subset, accuracy)
                row.chosen_k[subset] = k
            rows.append(row)
            logger.info("[%s] ablation %s: account=%s content=%s combined=%s", self.dataset_id, method,
                        _fmt(row.account), _fmt(row.content), _fmt(row.combined))

        report = AblationReport(provenance=self.provenance, model_id=model_id, rows=rows)
        frame = pd.DataFrame([
            {"method": r.method, **{s: _fmt(getattr(r, s)) for s in ABLATION_SUBSETS}}
            for r in rows
        ], columns=["method", *ABLATION_SUBSETS])
        with self.store.stage("ablate") as staged:
            staged.write_text(ABLATION_JSON, dump_document(report))
            staged.write_text(ABLATION_CSV, frame_csv(frame, self.provenance))
        return report

    # ---------------------------------------------------------------------- run

    def run(self, source: Optional[str] = None) -> ConsolidatedReport:
        self.extract()
        self.rank(source=source)
        self.select()
        self.train()
        self.ablate()
        return cmd_report(self.config.output_dir)


def _fmt(value: Optional[float]) -> str:
    return "unavailable" if value is None else f"{value:.{REPORT_DECIMALS}f}"


def cmd_extract(config: ExperimentConfig, detector: Optional[LanguageDetector] = None) -> FeatureTable:
    return ExperimentRunner(config, detector).extract()


def cmd_rank(config: ExperimentConfig, methods: Optional[Sequence[str]] = None,
             source: Optional[str] = None) -> List[RankingResult]:
    return ExperimentRunner(config).rank(methods, source)


def cmd_select(config: ExperimentConfig) -> SelectionResult:
    return ExperimentRunner(config).select()


def cmd_train(config: ExperimentConfig) -> List[EvaluationReport]:
    return ExperimentRunner(config).train()


def cmd_ablate(config: ExperimentConfig) -> AblationReport:
    return ExperimentRunner(config).ablate()


def cmd_run(config: ExperimentConfig, source: Optional[str] = None,
            detector: Optional[LanguageDetector] = None) -> ConsolidatedReport:
    return ExperimentRunner(config, detector).run(source)


def cmd_report(output_dir: Path) -> ConsolidatedReport:
    """
    Merge every stage result in an output directory.

    Writes report/report.json plus plot data: report/ranking_<method>.csv
    (feature,score,source) and report/selection_curve.csv (k,accuracy,seconds).

    Raises:
        NothingToReport: no stage results found
    """
    output_dir = Path(output_dir)
    if not output_dir.is_dir():
        raise NothingToReport(f"No results directory at {output_dir}")
    store = LocalArtifactStore(str(output_dir))
    extraction = load_document(store, EXTRACTION_LOG, StageDocument)
    rankings = load_document(store, RANKINGS_JSON, StageDocument)
    selection = load_document(store, SELECTION_JSON, StageDocument)
    training = load_document(store, EVALUATIONS_JSON, StageDocument)
    ablation = load_document(store, ABLATION_JSON, AblationReport)

    found = [d for d in (extraction, rankings, selection, training, ablation) if d is not None]
    if not found:
        raise NothingToReport(f"No stage results in {output_dir}")
    provenance: List[Provenance] = []
    for document in found:
        if document.provenance not in provenance:
            provenance.append(document.provenance)

    report = ConsolidatedReport(
        provenance=provenance,
        ingest=extraction.ingest if extraction else None,
        rankings=rankings.rankings if rankings else [],
        selection=selection.selection if selection else None,
        evaluations=training.evaluations if training else [],
        ablation=ablation,
        reference=reference_for(provenance[0].dataset_id),
    )
    with store.stage("report") as staged:
        staged.write_text(REPORT_JSON, dump_document(report))
        for ranking in report.rankings:
            staged.write_text(report_ranking_key(ranking.method), ranking_csv(ranking, provenance[0]))
        if report.selection is not None:
            staged.write_text(REPORT_CURVE_CSV, curve_csv(report.selection, provenance[0]))
    logger.info("[%s] consolidated %d stage results into %s", provenance[0].dataset_id, len(found), REPORT_JSON)
    return report
