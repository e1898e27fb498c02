"""
Content-based features computed from an account's tweets: interaction
aggregates, credibility and engagement, timing, tweet stylometry and
tweet readability.
"""
import unicodedata
from dataclasses import dataclass, field
from datetime import datetime
from typing import List, Optional, Sequence, Tuple

import numpy as np

from core.features.base import FeatureBlock
from core.models.catalog import READABILITY_INDICES
from core.models.records import TweetRecord
from core.textstats import (
    EntitySet, LanguageDetector, TokenizedText, count_elongated,
    detect_language, extract_entities, readability, tokenize
)
from core.textstats.stylometry import bot_mentions, casing_counts, similarity_from_cv

SECONDS_PER_HOUR = 3600.0

TEMPORAL_GAP_FEATURES = ("average_time_between_tweets", "idle_hours")

TWEET_STYLOMETRY_FEATURES = (
    "bot_reference_mean",
    "average_tweet_length",
    "num_unique_urls_mean",
    "num_unique_mentions_mean",
    "max_urls_in_a_tweet",
    "max_hashtags_in_a_tweet",
    "max_mentions_in_a_tweet",
    "average_tweets_only_url",
    "average_elongated_words",
    "num_unique_langs",
    "word_count_mean",
    "sentence_count_mean",
    "average_word_length",
    "average_words_lowercase",
    "average_words_uppercase",
    "average_words_titlecase",
    "tweets_sim_length",
    "tweets_sim_punctuation",
)


@dataclass(frozen=True)
class AccountAggregates:
    n_tweets: int = 0
    n_retweets: int = 0
    n_replies: int = 0
    sum_favorites: int = 0
    sum_retweet_counts: int = 0
    timestamps: Tuple[datetime, ...] = field(default_factory=tuple)


def aggregate(tweets: Sequence[TweetRecord]) -> AccountAggregates:
    """Missing interaction counts count as zero."""
    return AccountAggregates(
        n_tweets=len(tweets),
        n_retweets=sum(1 for t in tweets if t.is_retweet),
        n_replies=sum(1 for t in tweets if t.is_reply),
        sum_favorites=sum(t.favorite_count or 0 for t in tweets),
        sum_retweet_counts=sum(t.retweet_count or 0 for t in tweets),
        timestamps=tuple(sorted(t.created_at for t in tweets if t.created_at is not None)),
    )


def credibility(agg: AccountAggregates, followers: int) -> float:
    denominator = max(followers, 1)
    return (agg.sum_favorites / denominator + agg.sum_retweet_counts / denominator) / 2


def engagement(followers: int, lists: int, agg: AccountAggregates) -> float:
    return (followers + lists + agg.sum_retweet_counts + agg.sum_favorites) / 4


def average_retweets(agg: AccountAggregates, followers: int) -> float:
    return agg.n_retweets / max(followers, 1)


def temporal_features(agg: AccountAggregates) -> FeatureBlock:
    block = FeatureBlock(values={"ratio_retweet": agg.n_retweets / max(agg.n_tweets, 1)})
    if len(agg.timestamps) < 2:
        return block.mask(TEMPORAL_GAP_FEATURES)
    gaps = np.diff([ts.timestamp() for ts in agg.timestamps]) / SECONDS_PER_HOUR
    block.values["average_time_between_tweets"] = float(np.mean(gaps))
    block.values["idle_hours"] = float(np.max(gaps))
    return block


@dataclass(frozen=True)
class TweetText:
    """Entities of the raw text and tokens of the stripped text."""
    raw: str
    entities: EntitySet
    tokens: TokenizedText


def analyze_tweets(tweets: Sequence[TweetRecord]) -> List[TweetText]:
    analyses = []
    for t in tweets:
        entities = extract_entities(t.text)
        analyses.append(TweetText(raw=t.text, entities=entities, tokens=tokenize(entities.stripped)))
    return analyses


def _punctuation_count(text: str) -> int:
    return sum(1 for c in text if unicodedata.category(c).startswith("P"))


def tweet_stylometry(
    tweets: Sequence[TweetRecord],
    analyses: Optional[Sequence[TweetText]] = None,
    detector: Optional[LanguageDetector] = None,
) -> FeatureBlock:
    if not tweets:
        return FeatureBlock.all_masked(TWEET_STYLOMETRY_FEATURES)
    if analyses is None:
        analyses = analyze_tweets(tweets)

    lengths = [len(a.raw) for a in analyses]
    all_words = [w for a in analyses for w in a.tokens.words]
    casing = [casing_counts(a.tokens.words) for a in analyses]
    languages = {
        lang for lang in (detect_language(a.entities.stripped, detector) for a in analyses)
        if lang is not None
    }

    return FeatureBlock(values={
        "bot_reference_mean": float(np.mean([bot_mentions(a.raw) for a in analyses])),
        "average_tweet_length": float(np.mean(lengths)),
        "num_unique_urls_mean": float(np.mean([len(set(a.entities.urls)) for a in analyses])),
        "num_unique_mentions_mean": float(np.mean(
            [len({m.lower() for m in a.entities.mentions}) for a in analyses]
        )),
        "max_urls_in_a_tweet": float(max(len(a.entities.urls) for a in analyses)),
        "max_hashtags_in_a_tweet": float(max(len(a.entities.hashtags) for a in analyses)),
        "max_mentions_in_a_tweet": float(max(len(a.entities.mentions) for a in analyses)),
        "average_tweets_only_url": float(np.mean(
            [bool(a.entities.urls) and not a.entities.stripped for a in analyses]
        )),
        "average_elongated_words": float(np.mean([count_elongated(a.tokens.words) for a in analyses])),
        "num_unique_langs": float(len(languages)),
        "word_count_mean": float(np.mean([a.tokens.word_count for a in analyses])),
        "sentence_count_mean": float(np.mean([a.tokens.sentence_count for a in analyses])),
        "average_word_length": float(np.mean([len(w) for w in all_words])) if all_words else 0.0,
        "average_words_lowercase": float(np.mean([c[1] for c in casing])),
        "average_words_uppercase": float(np.mean([c[2] for c in casing])),
        "average_words_titlecase": float(np.mean([c[3] for c in casing])),
        "tweets_sim_length": similarity_from_cv(lengths),
        "tweets_sim_punctuation": similarity_from_cv([_punctuation_count(a.raw) for a in analyses]),
    })


def tweet_readability(
    tweets: Sequence[TweetRecord],
    analyses: Optional[Sequence[TweetText]] = None,
) -> FeatureBlock:
    """Per-index mean over non-degenerate tweets."""
    if analyses is None:
        analyses = analyze_tweets(tweets)
    scores = [s for s in (readability(a.tokens) for a in analyses) if not s.degenerate]
    if not scores:
        return FeatureBlock.all_masked(READABILITY_INDICES)
    means = np.mean([s.values() for s in scores], axis=0)
    return FeatureBlock(values={name: float(v) for name, v in zip(READABILITY_INDICES, means)})
