"""Dataset ingestion pipeline."""
from .dataset_loader import DatasetLoader, ingest

__all__ = ["DatasetLoader", "ingest"]
