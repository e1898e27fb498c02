"""
Entity extraction (URLs, hashtags, mentions, emojis) and entity stripping.

Entity features are computed on the raw text; every other text statistic
runs on the stripped text.
"""
import re
from dataclasses import dataclass
from typing import Tuple

import emoji

URL_RE = re.compile(r"(?:https?://|www\.)\S+", re.IGNORECASE)
HASHTAG_RE = re.compile(r"#(\w+)")
MENTION_RE = re.compile(r"@(\w+)")
_WS_RE = re.compile(r"\s+")


@dataclass(frozen=True)
class EntitySet:
    """Entities in order of appearance; duplicates kept."""
    urls: Tuple[str, ...] = ()
    hashtags: Tuple[str, ...] = ()
    mentions: Tuple[str, ...] = ()
    emojis: Tuple[str, ...] = ()
    stripped: str = ""

    @property
    def kinds_present(self) -> int:
        """Number of distinct entity kinds among urls, hashtags and mentions."""
        return sum(1 for group in (self.urls, self.hashtags, self.mentions) if group)

    @property
    def is_empty(self) -> bool:
        return not (self.urls or self.hashtags or self.mentions or self.emojis)


def _strip_once(text: str) -> str:
    text = URL_RE.sub(" ", text)
    text = HASHTAG_RE.sub(" ", text)
    text = MENTION_RE.sub(" ", text)
    text = emoji.replace_emoji(text, replace=" ")
    return _WS_RE.sub(" ", text).strip()


def strip_entities(text: str) -> str:
    """Remove all four entity kinds and collapse whitespace, until nothing changes."""
    current = _WS_RE.sub(" ", text or "").strip()
    while True:
        stripped = _strip_once(current)
        if stripped == current:
            return stripped
        current = stripped


def extract_entities(text: str) -> EntitySet:
    text = text or ""
    urls = URL_RE.findall(text)
    without_urls = URL_RE.sub(" ", text)
    return EntitySet(
        urls=tuple(urls),
        hashtags=tuple(HASHTAG_RE.findall(without_urls)),
        mentions=tuple(MENTION_RE.findall(without_urls)),
        emojis=tuple(e["emoji"] for e in emoji.emoji_list(text)),
        stripped=strip_entities(text),
    )
