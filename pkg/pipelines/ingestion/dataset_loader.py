"""
Dataset ingestion pipeline.
Processes manifest → raw files → AccountRecord/TweetRecord → IngestReport.
"""
import logging
from pathlib import Path
from typing import Dict, List, Tuple

from core.errors import EmptyDataset, IoFailure
from core.ingest import finalize, generate_synthetic, read_cresci, read_twibot
from core.ingest.corpus import RawCorpus
from core.models.records import AccountRecord, TweetRecord
from core.schemas.config import DatasetManifest
from core.schemas.outputs import IngestReport

logger = logging.getLogger(__name__)

IngestResult = Tuple[List[AccountRecord], Dict[str, List[TweetRecord]], IngestReport]


class DatasetLoader:
    """Loads a dataset described by a manifest into canonical records."""

    def load(self, manifest: DatasetManifest) -> IngestResult:
        """
        Read every file of the manifest.

        Returns:
            (accounts sorted by id, tweets per account id, IngestReport)
        """
        self._check_paths(manifest)
        if manifest.format == "cresci-csv":
            corpus = self._load_cresci(manifest)
        elif manifest.format == "twibot-json":
            corpus = self._load_twibot(manifest)
        elif manifest.format == "synthetic":
            corpus = self._load_synthetic(manifest)
        else:
            raise ValueError(f"Unsupported dataset format: {manifest.format}")

        if not corpus.accounts:
            raise EmptyDataset(f"[{manifest.dataset_id}] no parseable accounts")

        accounts, tweets, report = finalize(corpus, manifest)
        logger.info(
            "[%s] ingested %d accounts, %d tweets, %d rows rejected",
            manifest.dataset_id, report.accounts_read, report.tweets_read, report.rows_rejected,
        )
        for raw_class in report.tweetless_classes:
            logger.warning("[%s] class %r has no tweets; its content features are masked",
                           manifest.dataset_id, raw_class)
        return accounts, tweets, report

    @staticmethod
    def _check_paths(manifest: DatasetManifest) -> None:
        missing = [p for p in manifest.paths.values() if not Path(p).exists()]
        if missing:
            raise IoFailure(f"[{manifest.dataset_id}] missing input files: {', '.join(sorted(missing))}")

    def _load_cresci(self, manifest: DatasetManifest) -> RawCorpus:
        return read_cresci(manifest)

    def _load_twibot(self, manifest: DatasetManifest) -> RawCorpus:
        return read_twibot(manifest)

    def _load_synthetic(self, manifest: DatasetManifest) -> RawCorpus:
        return generate_synthetic(manifest)


def ingest(manifest: DatasetManifest) -> IngestResult:
    return DatasetLoader().load(manifest)
