"""
In-memory corpus assembled by the readers, and the record builders they share.
"""
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple

from core.errors import UnmappedClass
from core.ingest import fields as f
from core.models.records import (
    AccountRecord, Label, TweetRecord, classify_tweet_kind, validate_account, validate_tweet
)
from core.schemas.config import DatasetManifest
from core.schemas.outputs import IngestReport

logger = logging.getLogger(__name__)

TweetsByAccount = Dict[str, List[TweetRecord]]


@dataclass
class RawCorpus:
    """Accounts, tweets and bookkeeping collected by a reader."""
    accounts: List[AccountRecord] = field(default_factory=list)
    tweets: TweetsByAccount = field(default_factory=dict)
    raw_class: Dict[str, str] = field(default_factory=dict)
    rows_rejected: int = 0
    tweets_read: int = 0

    def add_account(self, account: AccountRecord, raw_class: str) -> bool:
        if account.id in self.raw_class:
            self.rows_rejected += 1
            return False
        self.accounts.append(account)
        self.raw_class[account.id] = raw_class
        self.tweets.setdefault(account.id, [])
        return True

    def add_tweet(self, tweet: TweetRecord) -> bool:
        if tweet.author_id not in self.tweets:
            self.rows_rejected += 1
            return False
        self.tweets[tweet.author_id].append(tweet)
        self.tweets_read += 1
        return True


def map_label(raw_class: str, class_mapping: Mapping[str, Label]) -> Label:
    key = raw_class.strip()
    if key in class_mapping:
        return Label(class_mapping[key])
    lowered = {k.lower(): v for k, v in class_mapping.items()}
    if key.lower() in lowered:
        return Label(lowered[key.lower()])
    raise UnmappedClass(f"Raw class {raw_class!r} has no entry in class_mapping")


def build_account(row: Mapping[str, str], label: Label, manifest: DatasetManifest) -> Optional[AccountRecord]:
    """
    Build an AccountRecord from a row of canonical column names.

    Returns:
        The record, or None when the row is malformed or violates an invariant
    """
    try:
        account_id = f.parse_str(row.get("id"))
        created_at = f.parse_timestamp(row.get("created_at"))
        if not account_id or created_at is None:
            return None
        account = AccountRecord(
            id=account_id,
            created_at=created_at,
            crawl_time=manifest.crawl_time,
            label=label,
            name=f.parse_str(row.get("name")),
            screen_name=f.parse_str(row.get("screen_name")),
            description=f.parse_str(row.get("description")),
            location=f.parse_str(row.get("location")),
            url=f.parse_optional_str(row.get("url")),
            protected=f.parse_bool(row.get("protected")),
            verified=f.parse_bool(row.get("verified")),
            followers_count=f.parse_int(row.get("followers_count")),
            friends_count=f.parse_int(row.get("friends_count")),
            favourites_count=f.parse_int(row.get("favourites_count")),
            listed_count=f.parse_int(row.get("listed_count")),
            statuses_count=f.parse_int(row.get("statuses_count")),
            lang=f.parse_optional_str(row.get("lang")),
            geo_enabled=f.parse_bool(row.get("geo_enabled")),
            default_profile=f.parse_bool(row.get("default_profile")),
            default_profile_image=f.parse_bool(row.get("default_profile_image")),
            profile_background_color=f.parse_optional_str(row.get("profile_background_color")),
            profile_link_color=f.parse_optional_str(row.get("profile_link_color")),
            profile_sidebar_border_color=f.parse_optional_str(row.get("profile_sidebar_border_color")),
            profile_sidebar_fill_color=f.parse_optional_str(row.get("profile_sidebar_fill_color")),
            profile_text_color=f.parse_optional_str(row.get("profile_text_color")),
            profile_background_image_url=f.parse_optional_str(row.get("profile_background_image_url")),
            profile_background_tile=f.parse_bool(row.get("profile_background_tile")),
            profile_use_background_image=f.parse_bool(row.get("profile_use_background_image")),
        )
    except ValueError:
        return None
    violations = validate_account(account)
    if violations:
        logger.debug("[%s] account %s rejected: %s", manifest.dataset_id, account.id, "; ".join(violations))
        return None
    return account


def build_tweet(row: Mapping[str, str]) -> Optional[TweetRecord]:
    try:
        text = row.get("text") or ""
        is_retweet, is_reply = classify_tweet_kind(
            text,
            f.parse_reference_id(row.get("retweeted_status_id")),
            f.parse_reference_id(row.get("in_reply_to_status_id")),
        )
        tweet = TweetRecord(
            author_id=f.parse_str(row.get("author_id")),
            text=text,
            created_at=f.parse_timestamp(row.get("created_at")),
            source=f.parse_optional_str(row.get("source")),
            is_retweet=is_retweet,
            is_reply=is_reply,
            num_hashtags=f.parse_optional_int(row.get("num_hashtags")),
            num_mentions=f.parse_optional_int(row.get("num_mentions")),
            num_urls=f.parse_optional_int(row.get("num_urls")),
            retweet_count=f.parse_optional_int(row.get("retweet_count")),
            favorite_count=f.parse_optional_int(row.get("favorite_count")),
        )
    except ValueError:
        return None
    if validate_tweet(tweet):
        return None
    return tweet


def truncate_tweets(tweets: List[TweetRecord], limit: Optional[int]) -> List[TweetRecord]:
    """
    Keep at most `limit` tweets: the most recent when timestamps exist
    (undated tweets count as oldest), else the first in file order.
    Dated output is chronological.
    """
    if any(t.created_at is not None for t in tweets):
        ordered = sorted(
            tweets,
            key=lambda t: (0, 0.0) if t.created_at is None else (1, t.created_at.timestamp()),
        )
        return ordered[-limit:] if limit else ordered
    return tweets[:limit] if limit else list(tweets)


def finalize(corpus: RawCorpus, manifest: DatasetManifest) -> Tuple[List[AccountRecord], TweetsByAccount, IngestReport]:
    """Sort by account id, truncate tweet lists and build the IngestReport."""
    accounts = sorted(corpus.accounts, key=lambda a: a.id)
    tweets = {
        a.id: truncate_tweets(corpus.tweets.get(a.id, []), manifest.max_tweets_per_user)
        for a in accounts
    }
    per_class = Counter(corpus.raw_class[a.id] for a in accounts)
    with_tweets = Counter(corpus.raw_class[a.id] for a in accounts if tweets[a.id])
    report = IngestReport(
        accounts_read=len(accounts),
        tweets_read=corpus.tweets_read,
        rows_rejected=corpus.rows_rejected,
        per_class_counts=dict(sorted(per_class.items())),
        tweetless_classes=sorted(c for c in per_class if with_tweets[c] == 0),
    )
    return accounts, tweets, report
