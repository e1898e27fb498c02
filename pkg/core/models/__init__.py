"""Core data models and the feature catalog."""
from .records import (
    AccountRecord, TweetRecord, FeatureDef, FeatureVector,
    Label, FeatureSource, FeatureFamily, validate_account, validate_tweet
)
from .catalog import FeatureCatalog, build_catalog, KNOWN_DATASETS

__all__ = [
    "AccountRecord",
    "TweetRecord",
    "FeatureDef",
    "FeatureVector",
    "Label",
    "FeatureSource",
    "FeatureFamily",
    "validate_account",
    "validate_tweet",
    "FeatureCatalog",
    "build_catalog",
    "KNOWN_DATASETS"
]
