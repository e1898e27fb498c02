import math
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from core.errors import DetectorUnavailable
from core.textstats import (
    LanguageDetector,
    NGramProfileDetector,
    casing_fractions,
    count_elongated,
    count_syllables,
    detect_language,
    extract_entities,
    mean_bigram_freq,
    readability,
    set_detector,
    shannon_entropy,
    string_similarity,
    strip_entities,
    tokenize,
)
from core.textstats.langid import FastTextDetector
from core.textstats.readability import count_difficult_words, easy_words


class TestTokenize:
    def test_words_and_sentences(self):
        tokens = tokenize("The cat sat.")
        assert tokens.words == ("The", "cat", "sat")
        assert tokens.sentence_count == 1

    def test_empty(self):
        tokens = tokenize("")
        assert tokens.words == ()
        assert tokens.sentences == ()

    def test_three_sentences(self):
        assert tokenize("Hi! Bye? Ok.").sentence_count == 3

    def test_apostrophes_stay_inside_words(self):
        assert tokenize("don't stop").words == ("don't", "stop")

    @given(st.text(max_size=80))
    def test_one_syllable_count_per_word(self, text):
        tokens = tokenize(text)
        assert len(tokens.syllable_counts) == len(tokens.words)
        assert all(n >= 1 for n in tokens.syllable_counts)


@pytest.mark.parametrize("word, expected", [
    ("cat", 1), ("table", 2), ("make", 1), ("coffee", 2), ("readability", 5), ("rhythm", 1),
    ("agree", 2), ("free", 1), ("banana", 3), ("happy", 2),
])
def test_count_syllables(word, expected):
    assert count_syllables(word) == expected


class TestEntropyAndBigrams:
    @pytest.mark.parametrize("text, expected", [("aaaa", 0.0), ("ab", 1.0), ("aabb", 1.0), ("", 0.0)])
    def test_entropy(self, text, expected):
        assert shannon_entropy(text) == pytest.approx(expected)

    @given(st.text(min_size=1, max_size=60))
    def test_entropy_bounds(self, text):
        h = shannon_entropy(text)
        assert -1e-12 <= h <= math.log2(len(set(text))) + 1e-9

    @pytest.mark.parametrize("text, expected", [("aaaa", 1.0), ("abcd", 1 / 3), ("a", 0.0)])
    def test_mean_bigram_freq(self, text, expected):
        assert mean_bigram_freq(text) == pytest.approx(expected)

    @given(st.text(min_size=2, max_size=60))
    def test_mean_bigram_freq_matches_occurrence_average(self, text):
        bigrams = [text[i:i + 2] for i in range(len(text) - 1)]
        counts = Counter(bigrams)
        expected = sum(counts[b] / len(bigrams) for b in bigrams) / len(bigrams)
        assert mean_bigram_freq(text) == pytest.approx(expected)


class TestCasing:
    @pytest.mark.parametrize("text, expected", [
        ("the CAT Sat", (1 / 3, 1 / 3, 1 / 3)),
        ("hello world", (1.0, 0.0, 0.0)),
        ("HeLLo", (0.0, 0.0, 0.0)),
        ("", (0.0, 0.0, 0.0)),
    ])
    def test_fractions(self, text, expected):
        assert casing_fractions(tokenize(text)) == pytest.approx(expected)

    @given(st.text(max_size=80))
    def test_partition(self, text):
        assert sum(casing_fractions(tokenize(text))) <= 1.0 + 1e-12


class TestSimilarity:
    @pytest.mark.parametrize("a, b, expected", [
        ("alice", "alice", 1.0), ("abc", "abd", 2 / 3), ("", "x", 0.0), ("", "", 1.0),
    ])
    def test_values(self, a, b, expected):
        assert string_similarity(a, b) == pytest.approx(expected, abs=1e-4)

    @given(st.text(max_size=20), st.text(max_size=20))
    def test_symmetric_and_identity(self, a, b):
        assert string_similarity(a, b) == pytest.approx(string_similarity(b, a))
        assert (string_similarity(a, b) == 1.0) == (a == b)


@pytest.mark.parametrize("words, expected", [(["sooo", "cool"], 1), ([], 0), (["aaa"], 1)])
def test_count_elongated(words, expected):
    assert count_elongated(words) == expected


class TestEntities:
    def test_all_kinds(self):
        entities = extract_entities("go #a @b http://x.y")
        assert entities.hashtags == ("a",)
        assert entities.mentions == ("b",)
        assert entities.urls == ("http://x.y",)
        assert entities.stripped == "go"

    def test_no_entities(self):
        entities = extract_entities("no entities")
        assert entities.is_empty
        assert entities.stripped == "no entities"

    def test_duplicates_retained(self):
        entities = extract_entities("#a #a")
        assert entities.hashtags == ("a", "a")
        assert len(set(entities.hashtags)) == 1

    def test_url_fragments_are_not_hashtags(self):
        entities = extract_entities("see http://x.y/#frag")
        assert entities.urls == ("http://x.y/#frag",)
        assert entities.hashtags == ()

    def test_emoji(self):
        entities = extract_entities("nice 👍 day")
        assert entities.emojis == ("👍",)
        assert entities.stripped == "nice day"

    @given(st.text(max_size=80))
    def test_strip_is_idempotent(self, text):
        stripped = strip_entities(text)
        again = extract_entities(stripped)
        assert again.is_empty
        assert again.stripped == stripped


READABILITY_CORPUS = [
    "The cat sat on the mat.",
    "Readability formulas estimate difficulty. Longer words raise the grade.",
    "I like coffee. You like tea! Do they like water?",
    "Institutional investors anticipated considerable volatility throughout the quarter.",
    "Go home now.",
    "Short words help. " * 40,
    "Photosynthesis converts electromagnetic radiation into chemical energy within chloroplasts.",
    "We went to the park. The sun was warm. Kids ran and played until dinner.",
    "Notwithstanding the aforementioned considerations, the committee unanimously recommended postponement.",
    "Buy now! Limited offer! Click the link for free followers today!",
    "My dog likes to sleep on the sofa after a long walk in the rain.",
    "Computational linguistics combines statistical modelling with linguistic theory.",
    "It is what it is.",
    "The quarterly report shows revenue growth of twelve percent. Analysts expected less. "
    "Management attributes the improvement to operational efficiency and favourable exchange rates.",
    "Yes. No. Maybe. Perhaps tomorrow.",
    "Environmental sustainability requires coordinated international cooperation and accountability.",
    "She sells sea shells by the sea shore.",
    " ".join(["Every morning the baker opens the little shop at six."] * 12),
    "Happy birthday to you, my dear friend! I hope the year ahead brings joy.",
    "Unbelievably, the extraordinarily complicated mechanism functioned flawlessly.",
]


def _flesch(words, sentences, syllables):
    return 206.835 - 1.015 * words / sentences - 84.6 * syllables / words


class TestReadability:
    def test_flesch_of_the_cat_sat(self):
        scores = readability(tokenize("The cat sat."))
        assert scores.flesch_reading_ease == pytest.approx(119.19, abs=1e-9)
        assert scores.difficult_words == 0
        assert not scores.degenerate

    def test_empty_is_degenerate(self):
        scores = readability(tokenize(""))
        assert scores.degenerate
        assert all(v == 0.0 for v in scores.values())

    @pytest.mark.parametrize("text", READABILITY_CORPUS)
    def test_indices_match_closed_forms(self, text):
        tokens = tokenize(text)
        w, s, y = tokens.word_count, tokens.sentence_count, tokens.syllable_total
        chars = sum(sum(c.isalnum() for c in word) for word in tokens.words)
        poly = sum(1 for n in tokens.syllable_counts if n >= 3)
        easy = easy_words()
        difficult = sum(1 for word, n in zip(tokens.words, tokens.syllable_counts)
                        if n >= 2 and word.lower() not in easy)
        head = tokens.syllable_counts[:100]
        linsear = (sum(1 for n in head if n < 3) + 3 * sum(1 for n in head if n >= 3)) / s
        scores = readability(tokens)

        assert scores.flesch_reading_ease == pytest.approx(_flesch(w, s, y), abs=1e-6)
        assert scores.flesch_kincaid_grade == pytest.approx(0.39 * w / s + 11.8 * y / w - 15.59, abs=1e-6)
        assert scores.smog_index == pytest.approx(1.043 * math.sqrt(poly * 30 / s) + 3.1291, abs=1e-6)
        assert scores.coleman_liau_index == pytest.approx(
            0.0588 * 100 * chars / w - 0.296 * 100 * s / w - 15.8, abs=1e-6)
        assert scores.automated_readability_index == pytest.approx(
            4.71 * chars / w + 0.5 * w / s - 21.43, abs=1e-6)
        assert scores.gunning_fog == pytest.approx(0.4 * (w / s + 100 * poly / w), abs=1e-6)
        pdw = 100 * difficult / w
        assert scores.dale_chall_readability_score == pytest.approx(
            0.1579 * pdw + 0.0496 * w / s + (3.6365 if pdw > 5 else 0.0), abs=1e-6)
        assert scores.difficult_words == difficult == count_difficult_words(tokens)
        assert scores.linsear_write_formula == pytest.approx(
            linsear / 2 if linsear > 20 else (linsear - 2) / 2, abs=1e-6)

    @pytest.mark.parametrize("text, expected", [
        ("The cat sat.", 0.5),
        ("banana banana cat.", 2.5),
        (" ".join(["cat"] * 30) + ". " + " ".join(["dog"] * 30) + ".", 15.0),
        (" ".join(["cat"] * 120) + ".", 50.0),
    ])
    def test_linsear_write_by_hand(self, text, expected):
        assert readability(tokenize(text)).linsear_write_formula == pytest.approx(expected)

    def test_easy_word_list_is_loaded(self):
        words = easy_words()
        assert len(words) > 2000
        assert "cat" in words


class _StubDetector(LanguageDetector):
    def detect(self, text):
        return "xx"


class TestLanguage:
    def test_english_sentence(self):
        assert detect_language("the quick brown fox jumps over the lazy dog",
                               NGramProfileDetector()) == "en"

    def test_too_short_is_absent(self):
        assert detect_language("") is None
        assert detect_language("@someone #x") is None

    def test_stub_detector(self):
        assert detect_language("anything at all", _StubDetector()) == "xx"

    def test_installed_detector_is_used(self):
        set_detector(_StubDetector())
        assert detect_language("anything at all") == "xx"

    def test_missing_fasttext_model(self, tmp_path):
        with pytest.raises(DetectorUnavailable):
            FastTextDetector(str(tmp_path / "missing.bin"))
