"""
Batch feature extraction pipeline.
Processes AccountRecords + tweets → feature matrix, availability mask and timings.
"""
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence

import numpy as np
from joblib import Parallel, delayed

from core.features import FeatureExtractor, fit_color_model, source_vocabulary
from core.features.colors import ColorBinningModel, ColorRefitter
from core.models.catalog import FeatureCatalog
from core.models.records import AccountRecord, FeatureVector, TweetRecord
from core.schemas.config import DatasetManifest
from core.textstats import LanguageDetector

logger = logging.getLogger(__name__)


@dataclass
class FeatureTable:
    """Extracted matrix with its row and column metadata."""
    names: List[str]
    sources: List[str]
    account_ids: List[str]
    labels: np.ndarray
    matrix: np.ndarray
    mask: np.ndarray
    accounts: List[AccountRecord] = field(default_factory=list)
    family_seconds: Dict[str, float] = field(default_factory=dict)

    @property
    def n_rows(self) -> int:
        return self.matrix.shape[0]

    def columns(self, names: Sequence[str]) -> np.ndarray:
        index = {name: j for j, name in enumerate(self.names)}
        return self.matrix[:, [index[n] for n in names]]

    def color_refitter(self, manifest: DatasetManifest) -> Optional[ColorRefitter]:
        """Per-fold color refitting; None when account records are not at hand."""
        if len(self.accounts) != self.n_rows:
            return None
        return ColorRefitter(
            self.accounts, manifest.platform_defaults, manifest.default_background_image
        )


def _extract_batch(
    extractor_args: Dict,
    batch: Sequence[AccountRecord],
    tweets_by_account: Mapping[str, Sequence[TweetRecord]],
):
    extractor = FeatureExtractor(**extractor_args)
    vectors = [extractor.extract(a, tweets_by_account.get(a.id, ())) for a in batch]
    return vectors, dict(extractor.family_seconds)


class BatchFeatureExtractor:
    """Extract feature vectors for a whole dataset in batches."""

    def __init__(self, batch_size: int = 256, threads: int = 1):
        self.batch_size = batch_size
        self.threads = threads

    def prepare(
        self,
        accounts: Sequence[AccountRecord],
        tweets_by_account: Mapping[str, Sequence[TweetRecord]],
        manifest: DatasetManifest,
    ) -> Dict:
        """Dataset-wide state, computed serially before any batch runs."""
        color_model: ColorBinningModel = fit_color_model(
            accounts, manifest.platform_defaults, manifest.default_background_image
        )
        return {
            "color_model": color_model,
            "source_vocabulary": source_vocabulary(tweets_by_account),
        }

    def process(
        self,
        accounts: Sequence[AccountRecord],
        tweets_by_account: Mapping[str, Sequence[TweetRecord]],
        catalog: FeatureCatalog,
        manifest: DatasetManifest,
        detector: Optional[LanguageDetector] = None,
    ) -> FeatureTable:
        """
        Extract one row per account, in account order.

        Args:
            accounts: ingested accounts (sorted by id)
            tweets_by_account: tweets per account id
            catalog: features to compute, in column order
            manifest: platform defaults for color binning
            detector: language detector override

        Returns:
            FeatureTable; row order never depends on the thread count
        """
        state = self.prepare(accounts, tweets_by_account, manifest)
        extractor_args = dict(catalog=catalog, detector=detector, **state)

        batches = [
            accounts[i:i + self.batch_size] for i in range(0, len(accounts), self.batch_size)
        ]
        results = Parallel(n_jobs=self.threads, prefer="threads")(
            delayed(_extract_batch)(extractor_args, batch, tweets_by_account) for batch in batches
        )

        vectors: List[FeatureVector] = []
        family_seconds: Dict[str, float] = defaultdict(float)
        for batch_vectors, seconds in results:
            vectors.extend(batch_vectors)
            for family, elapsed in seconds.items():
                family_seconds[family] += elapsed

        logger.info(
            "[%s] extracted %d features for %d accounts in %d batches",
            catalog.dataset_id, len(catalog), len(vectors), len(batches),
        )
        return FeatureTable(
            names=catalog.names,
            sources=[f.source.value for f in catalog],
            account_ids=[v.account_id for v in vectors],
            labels=np.array([v.label.as_int for v in vectors], dtype=int),
            matrix=np.array([v.numbers for v in vectors], dtype=float).reshape(len(vectors), len(catalog)),
            mask=np.array([v.availability_mask for v in vectors], dtype=bool).reshape(len(vectors), len(catalog)),
            accounts=list(accounts),
            family_seconds=dict(sorted(family_seconds.items())),
        )
