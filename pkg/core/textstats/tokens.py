"""
Word, sentence and syllable segmentation.
"""
import re
from dataclasses import dataclass
from typing import List, Tuple

_WORD_RE = re.compile(r"(?:[^\W_]|')+")
_SENTENCE_SPLIT_RE = re.compile(r"(?<=[.!?])\s+")
_VOWEL_GROUP_RE = re.compile(r"[aeiouy]+")


def split_words(text: str) -> List[str]:
    """Maximal runs of letters, digits and apostrophes containing at least one letter or digit."""
    return [w for w in _WORD_RE.findall(text) if any(c.isalnum() for c in w)]


def split_sentences(text: str) -> List[str]:
    segments = _SENTENCE_SPLIT_RE.split(text.strip())
    return [s for s in segments if split_words(s)]


def count_syllables(word: str) -> int:
    """
    Vowel-group heuristic: maximal vowel runs minus a silent trailing 'e', at least 1.

    'y' counts as a vowel ("happy" is 2). A final "le" or "ee" is voiced and
    keeps its syllable ("table" and "agree" are 2).
    """
    w = "".join(c for c in word.lower() if c.isalpha())
    n = len(_VOWEL_GROUP_RE.findall(w))
    if n > 1 and w.endswith("e") and not w.endswith(("le", "ee")):
        n -= 1
    return max(n, 1)


@dataclass(frozen=True)
class TokenizedText:
    raw: str
    words: Tuple[str, ...]
    sentences: Tuple[str, ...]
    syllable_counts: Tuple[int, ...]

    @property
    def word_count(self) -> int:
        return len(self.words)

    @property
    def sentence_count(self) -> int:
        return len(self.sentences)

    @property
    def syllable_total(self) -> int:
        return sum(self.syllable_counts)

    @property
    def char_count(self) -> int:
        """Letters and digits inside words."""
        return sum(sum(1 for c in w if c.isalnum()) for w in self.words)


def tokenize(text: str) -> TokenizedText:
    text = text or ""
    words = split_words(text)
    return TokenizedText(
        raw=text,
        words=tuple(words),
        sentences=tuple(split_sentences(text)),
        syllable_counts=tuple(count_syllables(w) for w in words),
    )
