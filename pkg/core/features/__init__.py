"""Account- and content-based feature computation."""
from .base import FeatureBlock
from .account import user_age_days, account_ratios, name_features, description_readability
from .colors import ColorBinningModel, ColorRefitter, fit_color_model, color_features
from .content import (
    AccountAggregates, aggregate, credibility, engagement,
    temporal_features, tweet_stylometry, tweet_readability
)
from .dna import DnaSequence, dna_features
from .sources import classify_source, source_features, source_vocabulary
from .extractor import FeatureExtractor

__all__ = [
    "FeatureBlock",
    "user_age_days",
    "account_ratios",
    "name_features",
    "description_readability",
    "ColorBinningModel",
    "ColorRefitter",
    "fit_color_model",
    "color_features",
    "AccountAggregates",
    "aggregate",
    "credibility",
    "engagement",
    "temporal_features",
    "tweet_stylometry",
    "tweet_readability",
    "DnaSequence",
    "dna_features",
    "classify_source",
    "source_features",
    "source_vocabulary",
    "FeatureExtractor"
]
