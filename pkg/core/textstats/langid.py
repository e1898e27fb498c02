"""
Pluggable language identification.

The default detector ranks character n-gram profiles built from the bundled
sample texts in data/langs/ (one <code>.txt per language) and picks the
profile with the smallest out-of-place distance. Setting
BOTMINER_FASTTEXT_MODEL to a fastText language-id model file switches the
process-wide detector to fastText.
"""
import logging
import os
import re
import threading
from abc import ABC, abstractmethod
from collections import Counter
from importlib import resources
from typing import Dict, List, Optional

from core.errors import DetectorUnavailable
from core.textstats.entities import strip_entities

logger = logging.getLogger(__name__)

MIN_TEXT_LENGTH = 3
PROFILE_SIZE = 300
_WS_RE = re.compile(r"\s+")
_NON_LETTER_RE = re.compile(r"[^\w\s']|[\d_]")

try:
    import fasttext
    FASTTEXT_AVAILABLE = True
except ImportError:
    FASTTEXT_AVAILABLE = False


class LanguageDetector(ABC):
    """Returns a language code for a text, or None when undecidable."""

    @abstractmethod
    def detect(self, text: str) -> Optional[str]:
        ...


def ngram_profile(text: str, size: int = PROFILE_SIZE) -> Dict[str, int]:
    """Rank of each of the `size` most frequent 1-4 character n-grams (0 = most frequent)."""
    counts: Counter = Counter()
    cleaned = _NON_LETTER_RE.sub(" ", text.lower())
    for word in _WS_RE.split(cleaned):
        if not word:
            continue
        padded = f"_{word}_"
        for n in (1, 2, 3, 4):
            for i in range(len(padded) - n + 1):
                counts[padded[i:i + n]] += 1
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:size]
    return {gram: rank for rank, (gram, _) in enumerate(ranked)}


class NGramProfileDetector(LanguageDetector):
    """Character n-gram profile detector over the bundled language samples."""

    def __init__(self, profiles: Optional[Dict[str, Dict[str, int]]] = None, size: int = PROFILE_SIZE):
        self.size = size
        self.profiles = profiles if profiles is not None else self._load_bundled(size)
        if not self.profiles:
            raise DetectorUnavailable("No language profiles available")

    @staticmethod
    def _load_bundled(size: int) -> Dict[str, Dict[str, int]]:
        root = resources.files("core.textstats").joinpath("data", "langs")
        profiles: Dict[str, Dict[str, int]] = {}
        try:
            entries = sorted(root.iterdir(), key=lambda p: p.name)
        except (FileNotFoundError, NotADirectoryError) as e:
            raise DetectorUnavailable(f"Language samples missing: {e}") from e
        for entry in entries:
            if entry.name.endswith(".txt"):
                code = entry.name[:-len(".txt")]
                profiles[code] = ngram_profile(entry.read_text(encoding="utf-8"), size)
        logger.debug("[langid] loaded profiles: %s", ", ".join(profiles))
        return profiles

    @property
    def languages(self) -> List[str]:
        return sorted(self.profiles)

    def distance(self, profile: Dict[str, int], code: str) -> int:
        reference = self.profiles[code]
        return sum(
            abs(reference[gram] - rank) if gram in reference else self.size
            for gram, rank in profile.items()
        )

    def detect(self, text: str) -> Optional[str]:
        profile = ngram_profile(text, self.size)
        if not profile:
            return None
        # ties go to the alphabetically first code
        return min(self.languages, key=lambda code: (self.distance(profile, code), code))


class FastTextDetector(LanguageDetector):
    """Wraps a fastText language-id model (e.g. lid.176.bin)."""

    def __init__(self, model_path: str):
        if not FASTTEXT_AVAILABLE:
            raise DetectorUnavailable("fasttext is not installed")
        if not os.path.exists(model_path):
            raise DetectorUnavailable(f"fastText model not found: {model_path}")
        try:
            self.model = fasttext.load_model(model_path)
        except Exception as e:
            raise DetectorUnavailable(f"Cannot load fastText model {model_path}: {e}") from e
        self._lock = threading.Lock()

    def detect(self, text: str) -> Optional[str]:
        with self._lock:
            labels, _ = self.model.predict(_WS_RE.sub(" ", text), k=1)
        if not labels:
            return None
        return labels[0].replace("__label__", "")


_detector: Optional[LanguageDetector] = None
_detector_lock = threading.Lock()


def get_detector() -> LanguageDetector:
    """Get or create the process-wide detector."""
    global _detector
    with _detector_lock:
        if _detector is None:
            model_path = os.getenv("BOTMINER_FASTTEXT_MODEL")
            if model_path:
                logger.info("[langid] using fastText model %s", model_path)
                _detector = FastTextDetector(model_path)
            else:
                _detector = NGramProfileDetector()
        return _detector


def set_detector(detector: Optional[LanguageDetector]) -> None:
    """Install a detector; None resets to the default on next use."""
    global _detector
    with _detector_lock:
        _detector = detector


def detect_language(text: str, detector: Optional[LanguageDetector] = None) -> Optional[str]:
    stripped = strip_entities(text or "")
    if len(stripped) < MIN_TEXT_LENGTH:
        return None
    return (detector or get_detector()).detect(stripped)
