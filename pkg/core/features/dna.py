"""
Digital DNA: one symbol per tweet, compressed to measure how repetitive an
account's behaviour is.

Type alphabet:    A plain tweet, C reply, T retweet
Content alphabet: X two or more entity kinds, U url, H hashtag, M mention, N none
"""
import zlib
from dataclasses import dataclass
from typing import List, Sequence

from core.features.base import FeatureBlock
from core.models.records import TweetRecord
from core.textstats import extract_entities

COMPRESSION_LEVEL = 9

DNA_FEATURES = (
    "size_dna_type",
    "compress_size_dna_type",
    "compression_ratio_type",
    "size_dna_content",
    "compress_size_dna_content",
    "compression_ratio_content",
)


@dataclass(frozen=True)
class DnaSequence:
    kind: str
    symbols: str

    @property
    def size(self) -> int:
        return len(self.symbols.encode("ascii"))

    @property
    def compressed_size(self) -> int:
        return compressed_size(self.symbols)

    @property
    def compression_ratio(self) -> float:
        return self.size / self.compressed_size if self.symbols else 0.0


def compressed_size(symbols: str) -> int:
    return len(zlib.compress(symbols.encode("ascii"), COMPRESSION_LEVEL))


def chronological(tweets: Sequence[TweetRecord]) -> List[TweetRecord]:
    """Sort by timestamp when every tweet has one, else keep file order."""
    if tweets and all(t.created_at is not None for t in tweets):
        return sorted(tweets, key=lambda t: t.created_at)
    return list(tweets)


def type_symbol(tweet: TweetRecord) -> str:
    if tweet.is_retweet:
        return "T"
    if tweet.is_reply:
        return "C"
    return "A"


def content_symbol(tweet: TweetRecord) -> str:
    entities = extract_entities(tweet.text)
    if entities.kinds_present >= 2:
        return "X"
    if entities.urls:
        return "U"
    if entities.hashtags:
        return "H"
    if entities.mentions:
        return "M"
    return "N"


def dna_sequences(tweets: Sequence[TweetRecord]) -> List[DnaSequence]:
    ordered = chronological(tweets)
    return [
        DnaSequence("type", "".join(type_symbol(t) for t in ordered)),
        DnaSequence("content", "".join(content_symbol(t) for t in ordered)),
    ]


def dna_features(tweets: Sequence[TweetRecord]) -> FeatureBlock:
    if not tweets:
        return FeatureBlock.all_masked(DNA_FEATURES)
    type_seq, content_seq = dna_sequences(tweets)
    return FeatureBlock(values={
        "size_dna_type": float(type_seq.size),
        "compress_size_dna_type": float(type_seq.compressed_size),
        "compression_ratio_type": type_seq.compression_ratio,
        "size_dna_content": float(content_seq.size),
        "compress_size_dna_content": float(content_seq.compressed_size),
        "compression_ratio_content": content_seq.compression_ratio,
    })
