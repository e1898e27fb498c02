"""
Nine classic readability indices computed from one tokenization.

All indices use the same word, sentence and syllable counts as the
stylometry features, so the numbers stay consistent across families.
The Dale-Chall easy-word list is the one shipped with `textstat`.
"""
import logging
import math
from dataclasses import astuple, dataclass, fields
from functools import lru_cache
from importlib import resources
from typing import Dict, FrozenSet, Tuple

from core.errors import IoFailure
from core.textstats.tokens import TokenizedText

logger = logging.getLogger(__name__)

# Paths inside the textstat distribution, newest layout first.
_EASY_WORD_RESOURCES: Tuple[Tuple[str, ...], ...] = (
    ("resources", "en", "easy_words.txt"),
    ("easy_words.txt",),
)


@lru_cache(maxsize=1)
def easy_words() -> FrozenSet[str]:
    """Dale-Chall easy-word list, lowercased."""
    root = resources.files("textstat")
    for parts in _EASY_WORD_RESOURCES:
        candidate = root.joinpath(*parts)
        if candidate.is_file():
            words = frozenset(
                line.strip().lower()
                for line in candidate.read_text(encoding="utf-8").splitlines()
                if line.strip()
            )
            logger.debug("[readability] loaded %d easy words", len(words))
            return words
    raise IoFailure("Dale-Chall easy-word list not found in the textstat package")


@dataclass(frozen=True)
class ReadabilityScores:
    flesch_reading_ease: float = 0.0
    flesch_kincaid_grade: float = 0.0
    smog_index: float = 0.0
    coleman_liau_index: float = 0.0
    automated_readability_index: float = 0.0
    dale_chall_readability_score: float = 0.0
    difficult_words: float = 0.0
    linsear_write_formula: float = 0.0
    gunning_fog: float = 0.0
    degenerate: bool = False

    def as_dict(self) -> Dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self) if f.name != "degenerate"}

    def values(self) -> Tuple[float, ...]:
        return astuple(self)[:-1]


DEGENERATE = ReadabilityScores(degenerate=True)


def count_difficult_words(tokens: TokenizedText) -> int:
    easy = easy_words()
    return sum(
        1 for word, syllables in zip(tokens.words, tokens.syllable_counts)
        if syllables >= 2 and word.lower() not in easy
    )


def _linsear_write(tokens: TokenizedText) -> float:
    head = tokens.syllable_counts[:100]
    easy = sum(1 for s in head if s < 3)
    hard = len(head) - easy
    r = (easy + 3 * hard) / tokens.sentence_count
    return r / 2 if r > 20 else (r - 2) / 2


def readability(tokens: TokenizedText) -> ReadabilityScores:
    """
    Compute all indices for a tokenized text.

    Returns:
        ReadabilityScores; every index 0 with degenerate=True when the text
        has no words or no sentences
    """
    w = tokens.word_count
    s = tokens.sentence_count
    if w == 0 or s == 0:
        return DEGENERATE

    y = tokens.syllable_total
    chars = tokens.char_count
    poly = sum(1 for n in tokens.syllable_counts if n >= 3)
    words_per_sentence = w / s
    syllables_per_word = y / w

    difficult = count_difficult_words(tokens)
    pct_difficult = 100.0 * difficult / w
    dale_chall = 0.1579 * pct_difficult + 0.0496 * words_per_sentence
    if pct_difficult > 5:
        dale_chall += 3.6365

    return ReadabilityScores(
        flesch_reading_ease=206.835 - 1.015 * words_per_sentence - 84.6 * syllables_per_word,
        flesch_kincaid_grade=0.39 * words_per_sentence + 11.8 * syllables_per_word - 15.59,
        smog_index=1.043 * math.sqrt(poly * 30.0 / s) + 3.1291,
        coleman_liau_index=0.0588 * (100.0 * chars / w) - 0.296 * (100.0 * s / w) - 15.8,
        automated_readability_index=4.71 * chars / w + 0.5 * words_per_sentence - 21.43,
        dale_chall_readability_score=dale_chall,
        difficult_words=float(difficult),
        linsear_write_formula=_linsear_write(tokens),
        gunning_fog=0.4 * (words_per_sentence + 100.0 * poly / w),
    )
