"""Dataset readers and the canonical cache."""
from .corpus import RawCorpus, finalize, truncate_tweets
from .cresci import read_cresci
from .twibot import read_twibot
from .synthetic import SyntheticGenerator, generate_synthetic
from .canonical import write_canonical, read_canonical, read_canonical_header

__all__ = [
    "RawCorpus",
    "finalize",
    "truncate_tweets",
    "read_cresci",
    "read_twibot",
    "SyntheticGenerator",
    "generate_synthetic",
    "write_canonical",
    "read_canonical",
    "read_canonical_header"
]
