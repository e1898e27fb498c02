"""
Posting-client (source) features.

Raw sources are often HTML anchors such as
'<a href="http://twitter.com/download/iphone">Twitter for iPhone</a>';
classification looks at the anchor text when there is one.
"""
import re
from collections import Counter
from typing import Dict, FrozenSet, Iterable, Mapping, Optional, Sequence

from core.features.base import FeatureBlock
from core.models.catalog import SOURCE_CATEGORIES
from core.models.records import TweetRecord

_TAG_RE = re.compile(r"<[^>]+>")

# First match in table order wins, so "Twitter for iPad" is twitter.
SOURCE_NEEDLES = tuple(
    (c.replace("_", "-"), c) for c in SOURCE_CATEGORIES if c != "other"
)

SOURCE_FEATURES = tuple(f"source_{c}_percentage" for c in SOURCE_CATEGORIES)


def source_label(raw: str) -> str:
    """Anchor text of an HTML source, or the raw string."""
    text = _TAG_RE.sub("", raw).strip()
    return text or raw.strip()


def classify_source(raw: Optional[str]) -> Optional[str]:
    """Category of a raw source string; None when the tweet carries no source."""
    if raw is None or not raw.strip():
        return None
    label = source_label(raw).lower()
    for needle, category in SOURCE_NEEDLES:
        if needle in label:
            return category
    return "other"


def source_vocabulary(tweets_by_account: Mapping[str, Sequence[TweetRecord]]) -> FrozenSet[str]:
    """Distinct raw source strings over the whole dataset."""
    return frozenset(
        t.source for tweets in tweets_by_account.values() for t in tweets
        if t.source is not None and t.source.strip()
    )


def source_fractions(sources: Iterable[Optional[str]]) -> Dict[str, float]:
    counts = Counter(c for c in map(classify_source, sources) if c is not None)
    total = sum(counts.values())
    return {
        f"source_{c}_percentage": (counts[c] / total if total else 0.0)
        for c in SOURCE_CATEGORIES
    }


def source_features(tweets: Sequence[TweetRecord], vocabulary: FrozenSet[str]) -> FeatureBlock:
    names = ("different_sources",) + SOURCE_FEATURES
    sourced = [t.source for t in tweets if t.source is not None and t.source.strip()]
    if not sourced:
        return FeatureBlock.all_masked(names)
    values = {"different_sources": len(set(sourced)) / max(len(vocabulary), 1)}
    values.update(source_fractions(sourced))
    return FeatureBlock(values=values)
