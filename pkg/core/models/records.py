"""
Typed canonical records shared by every stage of the pipeline.
All records are frozen; constructors normalize their inputs once.

Pipeline: raw files → AccountRecord/TweetRecord → FeatureVector → matrix
"""
import math
import re
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from typing import FrozenSet, List, Optional, Tuple


class Label(str, Enum):
    HUMAN = "human"
    BOT = "bot"

    @property
    def as_int(self) -> int:
        # bot is the positive class
        return 1 if self is Label.BOT else 0


class FeatureSource(str, Enum):
    ACCOUNT = "account"
    CONTENT = "content"


class FeatureFamily(str, Enum):
    SOCIAL = "social"
    TEMPORAL = "temporal"
    READABILITY = "readability"
    STYLOMETRY = "stylometry"
    PLATFORM = "platform"
    RAW = "raw"


COLOR_FIELDS: Tuple[str, ...] = (
    "profile_background_color",
    "profile_link_color",
    "profile_sidebar_border_color",
    "profile_sidebar_fill_color",
    "profile_text_color",
)

COUNT_FIELDS: Tuple[str, ...] = (
    "followers_count",
    "friends_count",
    "favourites_count",
    "listed_count",
    "statuses_count",
)

_HEX_RE = re.compile(r"^(?:[0-9A-Fa-f]{3}|[0-9A-Fa-f]{6})$")


def as_utc(ts: Optional[datetime]) -> Optional[datetime]:
    """Naive timestamps are taken to be UTC."""
    if ts is None:
        return None
    if ts.tzinfo is None:
        return ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc)


def normalize_hex_color(value: Optional[str]) -> Optional[str]:
    """
    Normalize a hex color to uppercase 6-digit form.

    Returns None for empty input. Values that are not 3- or 6-digit hex are
    returned stripped but otherwise untouched so validation can report them.
    """
    if value is None:
        return None
    v = value.strip()
    if v.startswith("#"):
        v = v[1:]
    if not v:
        return None
    if not _HEX_RE.match(v):
        return v
    if len(v) == 3:
        v = "".join(c * 2 for c in v)
    return v.upper()


def is_hex_color(value: Optional[str]) -> bool:
    return value is not None and bool(_HEX_RE.match(value))


@dataclass(frozen=True)
class AccountRecord:
    """Canonical user profile."""
    id: str
    created_at: datetime
    crawl_time: datetime
    label: Label
    name: str = ""
    screen_name: str = ""
    description: str = ""
    location: str = ""
    url: Optional[str] = None
    protected: bool = False
    verified: bool = False
    followers_count: int = 0
    friends_count: int = 0
    favourites_count: int = 0
    listed_count: int = 0
    statuses_count: int = 0
    lang: Optional[str] = None
    geo_enabled: bool = False
    default_profile: bool = False
    default_profile_image: bool = False
    profile_background_color: Optional[str] = None
    profile_link_color: Optional[str] = None
    profile_sidebar_border_color: Optional[str] = None
    profile_sidebar_fill_color: Optional[str] = None
    profile_text_color: Optional[str] = None
    profile_background_image_url: Optional[str] = None
    profile_background_tile: bool = False
    profile_use_background_image: bool = False

    def __post_init__(self):
        object.__setattr__(self, "created_at", as_utc(self.created_at))
        object.__setattr__(self, "crawl_time", as_utc(self.crawl_time))
        object.__setattr__(self, "label", Label(self.label))
        for color_field in COLOR_FIELDS:
            object.__setattr__(self, color_field, normalize_hex_color(getattr(self, color_field)))

    def color(self, color_field: str) -> Optional[str]:
        return getattr(self, color_field)


@dataclass(frozen=True)
class TweetRecord:
    """Canonical tweet. A retweet is never also a reply."""
    author_id: str
    text: str = ""
    created_at: Optional[datetime] = None
    source: Optional[str] = None
    is_retweet: bool = False
    is_reply: bool = False
    num_hashtags: Optional[int] = None
    num_mentions: Optional[int] = None
    num_urls: Optional[int] = None
    retweet_count: Optional[int] = None
    favorite_count: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "created_at", as_utc(self.created_at))
        if self.is_retweet and self.is_reply:
            object.__setattr__(self, "is_reply", False)


def is_retweet_text(text: str) -> bool:
    return text.lstrip().startswith("RT @")


def classify_tweet_kind(
    text: str,
    retweeted_status_id: Optional[str] = None,
    in_reply_to_status_id: Optional[str] = None,
) -> Tuple[bool, bool]:
    """
    Decide (is_retweet, is_reply) from dataset markers.

    A retweet marker (retweeted_status_id set, or text starting "RT @")
    wins over any reply marker.
    """
    is_retweet = bool(retweeted_status_id) or is_retweet_text(text)
    if is_retweet:
        return True, False
    return False, bool(in_reply_to_status_id)


@dataclass(frozen=True)
class FeatureDef:
    """One named feature with the datasets it can be computed for."""
    name: str
    source: FeatureSource
    family: FeatureFamily
    availability: FrozenSet[str] = field(default_factory=frozenset)


@dataclass(frozen=True)
class FeatureVector:
    """Extracted numeric row, ordered like its catalog."""
    account_id: str
    label: Label
    values: Tuple[Tuple[str, float], ...]
    availability_mask: Tuple[bool, ...]

    def __post_init__(self):
        if len(self.values) != len(self.availability_mask):
            raise ValueError("values and availability_mask must have equal length")

    @property
    def names(self) -> List[str]:
        return [name for name, _ in self.values]

    @property
    def numbers(self) -> List[float]:
        return [value for _, value in self.values]


IMPUTE_VALUE = 0.0


def finite_or_impute(value: float) -> Tuple[float, bool]:
    """Return (value, True) when finite, else (IMPUTE_VALUE, False)."""
    try:
        v = float(value)
    except (TypeError, ValueError):
        return IMPUTE_VALUE, False
    if math.isfinite(v):
        return v, True
    return IMPUTE_VALUE, False


def validate_account(account: AccountRecord) -> List[str]:
    """
    Check AccountRecord invariants.

    Returns:
        List of human-readable violations; empty when the record is valid.
    """
    violations: List[str] = []
    for count_field in COUNT_FIELDS:
        if getattr(account, count_field) < 0:
            violations.append(f"{count_field} negative")
    for color_field in COLOR_FIELDS:
        value = account.color(color_field)
        if value is not None and not is_hex_color(value):
            violations.append(f"{color_field} invalid hex color")
    if account.crawl_time < account.created_at:
        violations.append("crawl_time before created_at")
    return violations


def validate_tweet(tweet: TweetRecord) -> List[str]:
    violations: List[str] = []
    if not tweet.author_id:
        violations.append("author_id empty")
    for count_field in ("num_hashtags", "num_mentions", "num_urls", "retweet_count", "favorite_count"):
        value = getattr(tweet, count_field)
        if value is not None and value < 0:
            violations.append(f"{count_field} negative")
    if tweet.is_retweet and tweet.is_reply:
        violations.append("retweet marked as reply")
    return violations
