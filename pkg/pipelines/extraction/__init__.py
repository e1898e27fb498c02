"""Feature extraction pipeline."""
from .batch_extractor import BatchFeatureExtractor, FeatureTable

__all__ = ["BatchFeatureExtractor", "FeatureTable"]
