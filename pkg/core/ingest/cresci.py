"""
Cresci-style CSV datasets: a users file and a tweets file per dataset or
per raw class.

Path roles in the manifest:
    users, tweets                 class read from a dataset/class/label column
    <raw class>/users, .../tweets class taken from the role prefix
"""
import logging
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple

import pandas as pd

from core.errors import ConfigError, IoFailure, SchemaMismatch
from core.ingest.corpus import RawCorpus, build_account, build_tweet, map_label
from core.ingest.fields import ACCOUNT_ALIASES, CLASS_COLUMNS, TWEET_ALIASES, canonical_header
from core.schemas.config import DatasetManifest

logger = logging.getLogger(__name__)

CHUNK_ROWS = 100_000


def split_roles(paths: Dict[str, str]) -> Tuple[List[Tuple[Optional[str], str]], List[Tuple[Optional[str], str]]]:
    """Return ([(raw_class, users_path)], [(raw_class, tweets_path)]) in role order."""
    users, tweets = [], []
    for role in sorted(paths):
        raw_class, _, kind = role.rpartition("/")
        target = users if kind == "users" else tweets if kind == "tweets" else None
        if target is None:
            raise ConfigError(f"Unknown path role for cresci-csv: {role!r}")
        target.append((raw_class or None, paths[role]))
    if not users:
        raise ConfigError("cresci-csv manifest needs at least one users path")
    return users, tweets


def _read_rows(path: str, aliases: Dict[str, str], corpus: RawCorpus) -> Iterator[Dict[str, str]]:
    """Yield rows keyed by canonical column names; structurally broken lines are counted as rejected."""
    if not Path(path).exists():
        raise IoFailure(f"File not found: {path}")

    def reject(_bad_line):
        corpus.rows_rejected += 1
        return None

    try:
        reader = pd.read_csv(
            path,
            dtype=str,
            keep_default_na=False,
            encoding="utf-8",
            engine="python",
            on_bad_lines=reject,
            chunksize=CHUNK_ROWS,
        )
        for chunk in reader:
            chunk.columns = [canonical_header(c, aliases) for c in chunk.columns]
            yield from chunk.to_dict(orient="records")
    except (OSError, UnicodeDecodeError) as e:
        raise IoFailure(f"Cannot read {path}: {e}") from e
    except pd.errors.EmptyDataError as e:
        raise SchemaMismatch(f"{path} has no header row") from e
    except pd.errors.ParserError as e:
        raise SchemaMismatch(f"Cannot parse {path}: {e}") from e


def _row_class(row: Dict[str, str], raw_class: Optional[str], path: str) -> str:
    if raw_class is not None:
        return raw_class
    for column in CLASS_COLUMNS:
        if row.get(column, "").strip():
            return row[column].strip()
    raise SchemaMismatch(f"{path}: no class column ({', '.join(CLASS_COLUMNS)}) and no class role prefix")


def read_cresci(manifest: DatasetManifest) -> RawCorpus:
    corpus = RawCorpus()
    users, tweets = split_roles(manifest.paths)

    for raw_class, path in users:
        before = len(corpus.accounts)
        for row in _read_rows(path, ACCOUNT_ALIASES, corpus):
            row_class = _row_class(row, raw_class, path)
            label = map_label(row_class, manifest.class_mapping)
            account = build_account(row, label, manifest)
            if account is None:
                corpus.rows_rejected += 1
                continue
            corpus.add_account(account, row_class)
        logger.info("[%s] %s: %d accounts", manifest.dataset_id, path, len(corpus.accounts) - before)

    for _, path in tweets:
        before = corpus.tweets_read
        for row in _read_rows(path, TWEET_ALIASES, corpus):
            tweet = build_tweet(row)
            if tweet is None:
                corpus.rows_rejected += 1
                continue
            corpus.add_tweet(tweet)
        logger.info("[%s] %s: %d tweets", manifest.dataset_id, path, corpus.tweets_read - before)

    return corpus
