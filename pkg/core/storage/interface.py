"""
Pluggable artifact storage for experiment outputs.
Stages write through a backend so that a failing stage can remove
everything it wrote.
"""
import logging
from abc import ABC, abstractmethod
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, List

from core.errors import IoFailure

logger = logging.getLogger(__name__)


class ArtifactStore(ABC):
    """Abstract artifact storage interface."""

    @abstractmethod
    def write_bytes(self, key: str, data: bytes) -> str:
        """Store data under key and return its location."""
        pass

    @abstractmethod
    def read_bytes(self, key: str) -> bytes:
        pass

    @abstractmethod
    def exists(self, key: str) -> bool:
        pass

    @abstractmethod
    def delete(self, key: str) -> bool:
        """Delete a key; False when it did not exist."""
        pass

    @abstractmethod
    def list(self, prefix: str = "") -> List[str]:
        """Keys under prefix, sorted."""
        pass

    @abstractmethod
    def path(self, key: str) -> Path:
        """Filesystem path for a key (for libraries that need one)."""
        pass

    def write_text(self, key: str, text: str) -> str:
        return self.write_bytes(key, text.encode("utf-8"))

    def read_text(self, key: str) -> str:
        return self.read_bytes(key).decode("utf-8")

    @contextmanager
    def stage(self, name: str) -> Iterator["StagedWrites"]:
        """
        Track writes made during a stage; on error, delete them and re-raise.
        """
        staged = StagedWrites(self)
        try:
            yield staged
        except BaseException:
            removed = staged.rollback()
            logger.warning("[%s] failed; removed %d partial outputs", name, removed)
            raise


class StagedWrites:
    """Write proxy that remembers every key it wrote."""

    def __init__(self, store: ArtifactStore):
        self.store = store
        self.keys: List[str] = []

    def write_bytes(self, key: str, data: bytes) -> str:
        self.keys.append(key)
        return self.store.write_bytes(key, data)

    def write_text(self, key: str, text: str) -> str:
        return self.write_bytes(key, text.encode("utf-8"))

    def reserve(self, key: str) -> Path:
        """Claim a key that a library writes itself; returns its path."""
        self.keys.append(key)
        return self.store.path(key)

    def rollback(self) -> int:
        return sum(1 for key in reversed(self.keys) if self.store.delete(key))


class LocalArtifactStore(ArtifactStore):
    """Local filesystem storage backend."""

    def __init__(self, base_path: str):
        self.base_path = Path(base_path)
        try:
            self.base_path.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise IoFailure(f"Cannot create output directory {self.base_path}: {e}") from e

    def path(self, key: str) -> Path:
        return self.base_path / key

    def write_bytes(self, key: str, data: bytes) -> str:
        file_path = self.path(key)
        try:
            file_path.parent.mkdir(parents=True, exist_ok=True)
            with open(file_path, "wb") as f:
                f.write(data)
        except OSError as e:
            raise IoFailure(f"Cannot write {file_path}: {e}") from e
        return str(file_path.relative_to(self.base_path))

    def read_bytes(self, key: str) -> bytes:
        file_path = self.path(key)
        try:
            with open(file_path, "rb") as f:
                return f.read()
        except OSError as e:
            raise IoFailure(f"Cannot read {file_path}: {e}") from e

    def exists(self, key: str) -> bool:
        return self.path(key).exists()

    def delete(self, key: str) -> bool:
        file_path = self.path(key)
        if file_path.exists():
            file_path.unlink()
            return True
        return False

    def list(self, prefix: str = "") -> List[str]:
        return sorted(
            str(p.relative_to(self.base_path)) for p in self.base_path.rglob("*")
            if p.is_file() and str(p.relative_to(self.base_path)).startswith(prefix)
        )
