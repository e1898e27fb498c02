"""
TwiBot-20-style JSON: a list of
{"ID", "profile": {...}, "tweet": [text, ...] | null, "label": "0" | "1", ...}.

Profile values are strings, often with trailing spaces. Only labeled
accounts are read; unlabeled support-set entries are skipped.
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict

from core.errors import ConfigError, IoFailure, SchemaMismatch
from core.ingest.corpus import RawCorpus, build_account, build_tweet, map_label
from core.ingest.fields import ACCOUNT_ALIASES, canonical_header
from core.schemas.config import DatasetManifest

logger = logging.getLogger(__name__)


def _profile_row(entry: Dict[str, Any]) -> Dict[str, str]:
    profile = entry.get("profile") or {}
    row = {
        canonical_header(k, ACCOUNT_ALIASES): ("" if v is None else str(v).strip())
        for k, v in profile.items()
    }
    row["id"] = str(entry.get("ID", row.get("id", ""))).strip()
    return row


def _load(path: str) -> list:
    if not Path(path).exists():
        raise IoFailure(f"File not found: {path}")
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as e:
        raise IoFailure(f"Cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise SchemaMismatch(f"{path} is not valid JSON: {e}") from e
    if not isinstance(data, list):
        raise SchemaMismatch(f"{path}: expected a JSON list of accounts")
    return data


def read_twibot(manifest: DatasetManifest) -> RawCorpus:
    if not manifest.paths:
        raise ConfigError("twibot-json manifest needs at least one path")
    corpus = RawCorpus()
    for role in sorted(manifest.paths):
        path = manifest.paths[role]
        skipped = 0
        for entry in _load(path):
            if not isinstance(entry, dict):
                corpus.rows_rejected += 1
                continue
            raw_label = entry.get("label")
            if raw_label is None or str(raw_label).strip() == "":
                skipped += 1
                continue
            raw_class = str(raw_label).strip()
            account = build_account(_profile_row(entry), map_label(raw_class, manifest.class_mapping), manifest)
            if account is None:
                corpus.rows_rejected += 1
                continue
            if not corpus.add_account(account, raw_class):
                continue
            for text in entry.get("tweet") or []:
                tweet = build_tweet({"author_id": account.id, "text": "" if text is None else str(text)})
                if tweet is None:
                    corpus.rows_rejected += 1
                    continue
                corpus.add_tweet(tweet)
        logger.info(
            "[%s] %s (%s): %d accounts so far, %d unlabeled skipped",
            manifest.dataset_id, path, role, len(corpus.accounts), skipped,
        )
    return corpus
