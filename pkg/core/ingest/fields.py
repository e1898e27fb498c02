"""
Header aliases and strict value parsers shared by the dataset readers.

Parsers raise ValueError on malformed values; readers turn that into a
rejected row.
"""
from datetime import datetime, timezone
from typing import Dict, Optional

from core.models.records import as_utc

ACCOUNT_ALIASES: Dict[str, str] = {
    "user_id": "id",
    "id_str": "id",
    "username": "screen_name",
    "user_screen_name": "screen_name",
    "user_name": "name",
    "favorites_count": "favourites_count",
    "followers": "followers_count",
    "friends": "friends_count",
    "following_count": "friends_count",
    "tweets_count": "statuses_count",
}

TWEET_ALIASES: Dict[str, str] = {
    "user_id": "author_id",
    "author": "author_id",
    "retweeted_status": "retweeted_status_id",
    "in_reply_to": "in_reply_to_status_id",
    "favorites": "favorite_count",
    "favourite_count": "favorite_count",
    "retweets": "retweet_count",
}

CLASS_COLUMNS = ("dataset", "class", "label")

_NULLS = {"", "null", "none", "nan", "na"}
_TIMESTAMP_FORMATS = (
    "%a %b %d %H:%M:%S %z %Y",
    "%Y-%m-%d %H:%M:%S%z",
    "%Y-%m-%d %H:%M:%S",
    "%Y-%m-%dT%H:%M:%S%z",
    "%Y-%m-%dT%H:%M:%S",
)


def canonical_header(name: str, aliases: Dict[str, str]) -> str:
    key = name.strip().lower()
    return aliases.get(key, key)


def is_null(value: Optional[str]) -> bool:
    return value is None or value.strip().lower() in _NULLS


def parse_str(value: Optional[str]) -> str:
    return "" if is_null(value) else value.strip()


def parse_optional_str(value: Optional[str]) -> Optional[str]:
    return None if is_null(value) else value.strip()


def parse_int(value: Optional[str]) -> int:
    """Missing → 0; anything non-integral raises ValueError."""
    if is_null(value):
        return 0
    number = float(value.strip())
    if not number.is_integer():
        raise ValueError(f"not an integer: {value!r}")
    return int(number)


def parse_optional_int(value: Optional[str]) -> Optional[int]:
    return None if is_null(value) else parse_int(value)


def parse_bool(value: Optional[str]) -> bool:
    if is_null(value):
        return False
    v = value.strip().lower()
    if v in ("1", "true", "t", "yes", "y"):
        return True
    if v in ("0", "false", "f", "no", "n"):
        return False
    raise ValueError(f"not a boolean: {value!r}")


def parse_reference_id(value: Optional[str]) -> Optional[str]:
    """Status-id reference; Cresci files store 0 for 'none'."""
    v = parse_optional_str(value)
    if v is None or v in ("0", "0.0"):
        return None
    return v


def parse_timestamp(value: Optional[str]) -> Optional[datetime]:
    """
    Parse platform timestamps ("Fri Apr 06 10:58:22 +0000 2012"), ISO-like
    strings and epoch seconds/milliseconds. Missing → None.
    """
    if is_null(value):
        return None
    v = value.strip()
    if v.isdigit():
        seconds = int(v) / 1000.0 if len(v) > 11 else int(v)
        return datetime.fromtimestamp(seconds, tz=timezone.utc)
    for fmt in _TIMESTAMP_FORMATS:
        try:
            return as_utc(datetime.strptime(v, fmt))
        except ValueError:
            continue
    try:
        return as_utc(datetime.fromisoformat(v))
    except ValueError:
        raise ValueError(f"unparseable timestamp: {value!r}") from None
