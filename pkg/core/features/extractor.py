"""
Per-account feature extraction in catalog order.
"""
import logging
import time
from collections import defaultdict
from typing import Callable, Dict, FrozenSet, Optional, Sequence

from core.features import account as account_features
from core.features import content as content_features
from core.features.base import FeatureBlock
from core.features.colors import ColorBinningModel, color_features
from core.features.dna import dna_features
from core.features.sources import source_features
from core.models.catalog import FeatureCatalog
from core.models.records import (
    AccountRecord, FeatureFamily, FeatureSource, FeatureVector, TweetRecord, finite_or_impute
)
from core.textstats import LanguageDetector

logger = logging.getLogger(__name__)


class FeatureExtractor:
    """
    Computes one FeatureVector per account.

    The color model and the source vocabulary are dataset-wide state that
    must be prepared (serially) before extraction; extraction itself is pure.
    """

    def __init__(
        self,
        catalog: FeatureCatalog,
        color_model: ColorBinningModel,
        source_vocabulary: FrozenSet[str] = frozenset(),
        detector: Optional[LanguageDetector] = None,
    ):
        self.catalog = catalog
        self.color_model = color_model
        self.source_vocabulary = source_vocabulary
        self.detector = detector
        self.family_seconds: Dict[str, float] = defaultdict(float)
        self._content_names = [f.name for f in catalog.by_source(FeatureSource.CONTENT)]
        self._wants_content = bool(self._content_names)

    def _timed(self, family: FeatureFamily, fn: Callable[[], FeatureBlock]) -> FeatureBlock:
        start = time.perf_counter()
        block = fn()
        self.family_seconds[family.value] += time.perf_counter() - start
        return block

    def account_block(self, account: AccountRecord) -> FeatureBlock:
        block = FeatureBlock()
        block.update(self._timed(
            FeatureFamily.SOCIAL,
            lambda: FeatureBlock(values=account_features.account_ratios(account)),
        ))
        block.update(self._timed(
            FeatureFamily.STYLOMETRY,
            lambda: FeatureBlock(values=account_features.name_features(account)),
        ))
        block.update(self._timed(
            FeatureFamily.READABILITY,
            lambda: account_features.description_readability(account),
        ))
        block.update(self._timed(
            FeatureFamily.PLATFORM,
            lambda: color_features(account, self.color_model),
        ))
        block.update(self._timed(
            FeatureFamily.RAW,
            lambda: FeatureBlock(values=account_features.raw_account_features(account)),
        ))
        return block

    def content_block(self, account: AccountRecord, tweets: Sequence[TweetRecord]) -> FeatureBlock:
        if not tweets:
            # tweet-less accounts keep their row with every content feature masked
            return FeatureBlock.all_masked(self._content_names)

        agg = content_features.aggregate(tweets)
        analyses = content_features.analyze_tweets(tweets)
        block = FeatureBlock()
        block.update(self._timed(FeatureFamily.SOCIAL, lambda: FeatureBlock(values={
            "average_retweets": content_features.average_retweets(agg, account.followers_count),
            "credibility": content_features.credibility(agg, account.followers_count),
            "engagement": content_features.engagement(
                account.followers_count, account.listed_count, agg
            ),
        })))
        block.update(self._timed(FeatureFamily.TEMPORAL, lambda: content_features.temporal_features(agg)))
        block.update(self._timed(FeatureFamily.TEMPORAL, lambda: dna_features(tweets)))
        block.update(self._timed(
            FeatureFamily.PLATFORM, lambda: source_features(tweets, self.source_vocabulary)
        ))
        block.update(self._timed(
            FeatureFamily.STYLOMETRY,
            lambda: content_features.tweet_stylometry(tweets, analyses, self.detector),
        ))
        block.update(self._timed(
            FeatureFamily.READABILITY,
            lambda: content_features.tweet_readability(tweets, analyses),
        ))
        return block

    def extract(self, account: AccountRecord, tweets: Sequence[TweetRecord]) -> FeatureVector:
        """
        Extract the catalog's features for one account.

        Non-finite values are imputed and masked; features outside the
        catalog are never computed into the vector.
        """
        block = self.account_block(account)
        if self._wants_content:
            block.update(self.content_block(account, tweets))

        values = []
        mask = []
        for feature in self.catalog:
            raw = block.values.get(feature.name)
            if raw is None:
                raise KeyError(f"extractor produced no value for {feature.name}")
            value, finite = finite_or_impute(raw)
            values.append((feature.name, value))
            mask.append(finite and feature.name not in block.masked)
        return FeatureVector(
            account_id=account.id,
            label=account.label,
            values=tuple(values),
            availability_mask=tuple(mask),
        )
