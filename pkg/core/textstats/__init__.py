"""Text statistics: tokenization, stylometry, readability, entities, similarity, language id."""
from .tokens import TokenizedText, tokenize, count_syllables
from .stylometry import (
    shannon_entropy, mean_bigram_freq, casing_fractions, count_elongated
)
from .similarity import string_similarity
from .entities import EntitySet, extract_entities, strip_entities
from .readability import ReadabilityScores, readability
from .langid import LanguageDetector, NGramProfileDetector, detect_language, set_detector

__all__ = [
    "TokenizedText",
    "tokenize",
    "count_syllables",
    "shannon_entropy",
    "mean_bigram_freq",
    "casing_fractions",
    "count_elongated",
    "string_similarity",
    "EntitySet",
    "extract_entities",
    "strip_entities",
    "ReadabilityScores",
    "readability",
    "LanguageDetector",
    "NGramProfileDetector",
    "detect_language",
    "set_detector"
]
