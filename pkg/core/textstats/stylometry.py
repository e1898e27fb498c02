"""
Character- and word-level style statistics for short profile fields and tweets.
"""
import math
import re
from collections import Counter
from typing import Iterable, Tuple

from core.textstats.tokens import TokenizedText

_ELONGATED_RE = re.compile(r"(.)\1\1")


def shannon_entropy(text: str) -> float:
    """Entropy of the character distribution, in bits per character."""
    if not text:
        return 0.0
    n = len(text)
    return -sum((c / n) * math.log2(c / n) for c in Counter(text).values())


def mean_bigram_freq(text: str) -> float:
    """
    Mean, over bigram occurrences, of each bigram's relative frequency
    within the string.

    Equals sum(count^2) / n^2 for n adjacent character pairs.
    """
    if len(text) < 2:
        return 0.0
    bigrams = Counter(text[i:i + 2] for i in range(len(text) - 1))
    n = len(text) - 1
    return sum(c * c for c in bigrams.values()) / (n * n)


def word_casing(word: str) -> str:
    """Return "lower", "upper", "title" or "" for a word, judged on its letters."""
    letters = [c for c in word if c.isalpha()]
    if not letters:
        return ""
    if all(c.isupper() for c in letters):
        return "upper"
    if all(c.islower() for c in letters):
        return "lower"
    if len(letters) >= 2 and letters[0].isupper() and all(c.islower() for c in letters[1:]):
        return "title"
    return ""


def casing_counts(words: Iterable[str]) -> Tuple[int, int, int, int]:
    """(alphabetic words, lower, upper, title)"""
    total = lower = upper = title = 0
    for w in words:
        if not any(c.isalpha() for c in w):
            continue
        total += 1
        kind = word_casing(w)
        if kind == "lower":
            lower += 1
        elif kind == "upper":
            upper += 1
        elif kind == "title":
            title += 1
    return total, lower, upper, title


def casing_fractions(tokens: TokenizedText) -> Tuple[float, float, float]:
    total, lower, upper, title = casing_counts(tokens.words)
    if total == 0:
        return 0.0, 0.0, 0.0
    return lower / total, upper / total, title / total


def count_elongated(words: Iterable[str]) -> int:
    """Words with three or more identical consecutive characters."""
    return sum(1 for w in words if _ELONGATED_RE.search(w))


def digit_count(text: str) -> int:
    return sum(1 for c in text if c.isdigit())


def bot_mentions(text: str) -> int:
    # raw substring count, so "robot" counts
    return text.lower().count("bot")


def contains_bot(text: str) -> bool:
    return "bot" in text.lower()


def similarity_from_cv(values: Iterable[float]) -> float:
    """1 / (1 + coefficient of variation); 1.0 for uniform or empty input."""
    values = list(values)
    if not values:
        return 1.0
    mean = sum(values) / len(values)
    if mean == 0:
        return 1.0
    var = sum((v - mean) ** 2 for v in values) / len(values)
    return 1.0 / (1.0 + math.sqrt(var) / mean)
