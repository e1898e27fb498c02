"""
Canonical cache: a versioned, length-prefixed binary container.

Layout:
    b"BMCC"                      magic
    uint32 big-endian            header length
    header                       UTF-8 JSON {"version": "v1", "dataset_id", "accounts", ...}
    repeated per account:
        uint32 big-endian        frame length
        frame                    UTF-8 JSON {"account": {...}, "tweets": [{...}, ...]}

Accounts appear in the order given (ingest sorts them by id); timestamps
are ISO-8601 UTC strings.
"""
import json
import logging
import struct
from dataclasses import asdict, fields
from datetime import datetime
from pathlib import Path
from typing import Any, BinaryIO, Dict, List, Mapping, Optional, Sequence, Tuple

from core.errors import IoFailure, SchemaMismatch
from core.models.records import AccountRecord, TweetRecord

logger = logging.getLogger(__name__)

MAGIC = b"BMCC"
CACHE_VERSION = "v1"
_LEN = struct.Struct(">I")

_ACCOUNT_TIME_FIELDS = ("created_at", "crawl_time")


def _encode(obj: Any) -> Any:
    if isinstance(obj, datetime):
        return obj.isoformat()
    if hasattr(obj, "value"):
        return obj.value
    raise TypeError(f"cannot encode {type(obj).__name__}")


def _account_from(d: Dict[str, Any]) -> AccountRecord:
    known = {f.name for f in fields(AccountRecord)}
    data = {k: v for k, v in d.items() if k in known}
    for key in _ACCOUNT_TIME_FIELDS:
        data[key] = datetime.fromisoformat(data[key])
    return AccountRecord(**data)


def _tweet_from(d: Dict[str, Any]) -> TweetRecord:
    known = {f.name for f in fields(TweetRecord)}
    data = {k: v for k, v in d.items() if k in known}
    if data.get("created_at") is not None:
        data["created_at"] = datetime.fromisoformat(data["created_at"])
    return TweetRecord(**data)


def _write_block(fh: BinaryIO, payload: Dict[str, Any]) -> None:
    raw = json.dumps(payload, default=_encode, sort_keys=True, ensure_ascii=False).encode("utf-8")
    fh.write(_LEN.pack(len(raw)))
    fh.write(raw)


def _read_block(fh: BinaryIO, path: Path) -> Optional[Dict[str, Any]]:
    prefix = fh.read(_LEN.size)
    if not prefix:
        return None
    if len(prefix) != _LEN.size:
        raise SchemaMismatch(f"{path}: truncated frame length")
    (length,) = _LEN.unpack(prefix)
    raw = fh.read(length)
    if len(raw) != length:
        raise SchemaMismatch(f"{path}: truncated frame")
    try:
        return json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise SchemaMismatch(f"{path}: corrupt frame: {e}") from e


def write_canonical(
    accounts: Sequence[AccountRecord],
    tweets_by_account: Mapping[str, Sequence[TweetRecord]],
    path: Path,
    dataset_id: str = "",
) -> Path:
    """
    Write accounts and their tweets to a canonical cache file.

    Returns:
        The path written
    """
    path = Path(path)
    header = {
        "version": CACHE_VERSION,
        "dataset_id": dataset_id,
        "accounts": len(accounts),
        "tweets": sum(len(tweets_by_account.get(a.id, ())) for a in accounts),
    }
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "wb") as fh:
            fh.write(MAGIC)
            _write_block(fh, header)
            for account in accounts:
                _write_block(fh, {
                    "account": asdict(account),
                    "tweets": [asdict(t) for t in tweets_by_account.get(account.id, ())],
                })
    except OSError as e:
        raise IoFailure(f"Cannot write canonical cache {path}: {e}") from e
    logger.info("[%s] wrote %d accounts to %s", dataset_id or "cache", len(accounts), path)
    return path


def read_canonical_header(path: Path) -> Dict[str, Any]:
    path = Path(path)
    try:
        with open(path, "rb") as fh:
            return _read_header(fh, path)
    except OSError as e:
        raise IoFailure(f"Cannot read canonical cache {path}: {e}") from e


def _read_header(fh: BinaryIO, path: Path) -> Dict[str, Any]:
    if fh.read(len(MAGIC)) != MAGIC:
        raise SchemaMismatch(f"{path} is not a canonical cache file")
    header = _read_block(fh, path)
    if header is None:
        raise SchemaMismatch(f"{path}: missing header")
    if header.get("version") != CACHE_VERSION:
        raise SchemaMismatch(
            f"{path}: cache version {header.get('version')!r}, expected {CACHE_VERSION!r}"
        )
    return header


def read_canonical(path: Path) -> Tuple[List[AccountRecord], Dict[str, List[TweetRecord]]]:
    path = Path(path)
    accounts: List[AccountRecord] = []
    tweets: Dict[str, List[TweetRecord]] = {}
    try:
        with open(path, "rb") as fh:
            header = _read_header(fh, path)
            while True:
                frame = _read_block(fh, path)
                if frame is None:
                    break
                account = _account_from(frame["account"])
                accounts.append(account)
                tweets[account.id] = [_tweet_from(t) for t in frame.get("tweets", [])]
    except OSError as e:
        raise IoFailure(f"Cannot read canonical cache {path}: {e}") from e
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaMismatch(f"{path}: malformed record: {e}") from e
    if len(accounts) != header.get("accounts", len(accounts)):
        raise SchemaMismatch(f"{path}: header announces {header['accounts']} accounts, found {len(accounts)}")
    return accounts, tweets
