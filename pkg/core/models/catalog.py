"""
Feature catalog and per-dataset availability.

Every feature declares the raw fields it is computed from; a feature is
available for a dataset when that dataset carries all of those raw fields.
"""
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from core.errors import UnknownDataset
from core.models.records import FeatureDef, FeatureFamily, FeatureSource

KNOWN_DATASETS: Tuple[str, ...] = ("cresci-15", "cresci-17", "twibot-20", "synthetic")

_ACCOUNT_COMMON = frozenset({
    "id", "created_at", "description", "location", "name", "protected",
    "followers_count", "statuses_count", "listed_count", "url", "screen_name",
    "verified", "friends_count", "favourites_count", "lang", "time_zone",
    "default_profile", "default_profile_image", "geo_enabled",
    "profile_use_background_image", "profile_background_image_url_https",
    "profile_text_color", "profile_image_url", "profile_image_url_https",
    "profile_sidebar_border_color", "profile_background_tile",
    "profile_sidebar_fill_color", "profile_background_image_url",
    "profile_background_color", "profile_link_color", "utc_offset",
})

RAW_ACCOUNT_FIELDS: Dict[str, FrozenSet[str]] = {
    "cresci-15": _ACCOUNT_COMMON | {"profile_banner_url", "updated"},
    "cresci-17": _ACCOUNT_COMMON | {
        "following", "profile_banner_url", "is_translator", "follow_request_sent",
        "notifications", "contributors_enabled", "timestamp", "crawled_at", "updated",
    },
    "twibot-20": _ACCOUNT_COMMON | {
        "entities", "pinned_tweet_id", "is_translator", "contributors_enabled",
        "is_translation_enabled", "has_extended_profile",
    },
}

_CONTENT_CRESCI = frozenset({
    "author_id", "created_at", "num_hashtags", "num_mentions", "geo", "id",
    "in_reply_to_user_id", "reply_count", "favorite_count", "source", "text",
    "truncated", "in_reply_to_status_id", "in_reply_to_screen_name",
    "retweeted_status_id", "place", "timestamp",
})

RAW_CONTENT_FIELDS: Dict[str, FrozenSet[str]] = {
    "cresci-15": _CONTENT_CRESCI | {"num_urls"},
    "cresci-17": _CONTENT_CRESCI | {
        "possibly_sensitive", "retweet_count", "contributors", "favorited",
        "retweeted", "crawled_at", "updated",
    },
    "twibot-20": frozenset({"text"}),
}

# The synthetic generator emits every raw field.
RAW_ACCOUNT_FIELDS["synthetic"] = frozenset().union(*RAW_ACCOUNT_FIELDS.values())
RAW_CONTENT_FIELDS["synthetic"] = frozenset().union(*RAW_CONTENT_FIELDS.values())

READABILITY_INDICES: Tuple[str, ...] = (
    "flesch_reading_ease",
    "flesch_kincaid_grade",
    "smog_index",
    "coleman_liau_index",
    "automated_readability_index",
    "dale_chall_readability_score",
    "difficult_words",
    "linsear_write_formula",
    "gunning_fog",
)

SOURCE_CATEGORIES: Tuple[str, ...] = (
    "tweetadder", "iphone", "android", "twitter", "tweetdeck", "ipad", "web",
    "facebook", "instagram", "api", "web_api", "mobile", "other",
)

COLOR_BIN_FEATURES: Tuple[Tuple[str, str, Tuple[str, str, str]], ...] = (
    # (color field, prefix, (default, common, uncommon) suffixes) as named in the catalog
    ("profile_background_color", "profile_background_color", ("_is_default", "_is_common", "_is_uncommon")),
    ("profile_link_color", "profile_link_color", ("_default", "_common", "_uncommon")),
    ("profile_sidebar_border_color", "profile_sidebar_border_color", ("_default", "_common", "_uncommon")),
    ("profile_sidebar_fill_color", "profile_sidebar_fill_color", ("_default", "_common", "_uncommon")),
    ("profile_text_color", "profile_text_color", ("_default", "_common", "_uncommon")),
)


def color_bin_names(color_field: str) -> Tuple[str, str, str]:
    for field_name, prefix, suffixes in COLOR_BIN_FEATURES:
        if field_name == color_field:
            return tuple(prefix + s for s in suffixes)  # type: ignore[return-value]
    raise KeyError(color_field)


@dataclass(frozen=True)
class _Spec:
    name: str
    source: FeatureSource
    family: FeatureFamily
    account_fields: Tuple[str, ...] = ()
    content_fields: Tuple[str, ...] = ()


def _acc(name: str, family: FeatureFamily, *fields: str) -> _Spec:
    return _Spec(name, FeatureSource.ACCOUNT, family, account_fields=fields)


def _con(name: str, family: FeatureFamily, *fields: str) -> _Spec:
    return _Spec(name, FeatureSource.CONTENT, family, content_fields=fields or ("text",))


def _feature_specs() -> List[_Spec]:
    S, T, R, Y, P, W = (
        FeatureFamily.SOCIAL, FeatureFamily.TEMPORAL, FeatureFamily.READABILITY,
        FeatureFamily.STYLOMETRY, FeatureFamily.PLATFORM, FeatureFamily.RAW,
    )
    specs: List[_Spec] = [
        _acc("followers_growth_rate", S, "followers_count", "created_at"),
        _acc("friends_growth_rate", S, "friends_count", "created_at"),
        _acc("favourites_growth_rate", S, "favourites_count", "created_at"),
        _acc("listed_growth_rate", S, "listed_count", "created_at"),
        _acc("followers_friends_ratio", S, "followers_count", "friends_count"),
        _acc("average_favorites", S, "favourites_count", "followers_count"),
        _acc("reputation", S, "followers_count", "friends_count"),
        _acc("user_age", T, "created_at"),
        _acc("tweet_freq", T, "statuses_count", "created_at"),
    ]
    specs += [_acc(f"description_{idx}", R, "description") for idx in READABILITY_INDICES]
    specs += [
        _acc("screen_name_length", Y, "screen_name"),
        _acc("name_length", Y, "name"),
        _acc("description_length", Y, "description"),
        _acc("description_digits_count", Y, "description"),
        _acc("description_mean_bigram_freq", Y, "description"),
        _acc("screen_name_digits_count", Y, "screen_name"),
        _acc("name_digits_count", Y, "name"),
        _acc("screen_name_mean_bigram_freq", Y, "screen_name"),
        _acc("screen_name_entropy", Y, "screen_name"),
        _acc("name_mean_bigram_freq", Y, "name"),
        _acc("name_entropy", Y, "name"),
        _acc("description_entropy", Y, "description"),
        _acc("name_sim", Y, "name", "screen_name"),
        _acc("name_ratio", Y, "name", "screen_name"),
        _acc("name_contains_bot", Y, "name"),
        _acc("screen_name_contains_bot", Y, "screen_name"),
        _acc("description_contains_bot", Y, "description"),
        _acc("description_hashtag_count", Y, "description"),
        _acc("description_url_count", Y, "description"),
        _acc("description_unique_url_count", Y, "description"),
        _acc("description_unique_mention_count", Y, "description"),
        _acc("description_fraction_of_words_lowercase", Y, "description"),
        _acc("description_fraction_of_words_uppercase", Y, "description"),
        _acc("description_fraction_of_words_tilecase", Y, "description"),
        _acc("description_word_count", Y, "description"),
        _acc("description_sentence_count", Y, "description"),
        _acc("description_average_word_length", Y, "description"),
        _acc("description_average_words_per_sentence", Y, "description"),
    ]
    # color binning, background first as in the new-crafted account table
    bg_default, bg_common, bg_uncommon = color_bin_names("profile_background_color")
    specs += [
        _acc(bg_default, P, "profile_background_color"),
        _acc(bg_uncommon, P, "profile_background_color"),
        _acc(bg_common, P, "profile_background_color"),
        _acc("profile_background_image_url_default_other_none", P, "profile_background_image_url"),
        _acc("has_profile_background_tile", P, "profile_background_tile"),
    ]
    for color_field, _, _ in COLOR_BIN_FEATURES[1:]:
        for bin_name in color_bin_names(color_field):
            specs.append(_acc(bin_name, P, color_field))
    specs += [
        _acc("followers_count", W, "followers_count"),
        _acc("friends_count", W, "friends_count"),
        _acc("favourites_count", W, "favourites_count"),
        _acc("listed_count", W, "listed_count"),
        _acc("statuses_count", W, "statuses_count"),
        _acc("verified", W, "verified"),
        _acc("protected", W, "protected"),
        _acc("geo_enabled", W, "geo_enabled"),
        _acc("default_profile", W, "default_profile"),
        _acc("default_profile_image", W, "default_profile_image"),
        _acc("profile_use_background_image", W, "profile_use_background_image"),
        _acc("has_url", W, "url"),
        _acc("has_location", W, "location"),
    ]

    # content
    specs += [
        _con("ratio_retweet", S, "text"),
        _Spec("average_retweets", FeatureSource.CONTENT, S,
              account_fields=("followers_count",), content_fields=("text",)),
        _con("average_time_between_tweets", T, "created_at"),
        _con("idle_hours", T, "created_at"),
        _con("size_dna_type", T, "text"),
        _con("compress_size_dna_type", T, "text"),
        _con("compression_ratio_type", T, "text"),
        _con("size_dna_content", T, "text"),
        _con("compress_size_dna_content", T, "text"),
        _con("compression_ratio_content", T, "text"),
    ]
    specs += [_con(idx, R, "text") for idx in READABILITY_INDICES]
    specs.append(_con("different_sources", P, "source"))
    specs += [_con(f"source_{cat}_percentage", P, "source") for cat in SOURCE_CATEGORIES]
    specs += [
        _con(name, Y, "text") for name in (
            "bot_reference_mean",
            "average_tweet_length",
            "num_unique_urls_mean",
            "num_unique_mentions_mean",
            "max_urls_in_a_tweet",
            "max_hashtags_in_a_tweet",
            "max_mentions_in_a_tweet",
            "average_tweets_only_url",
            "average_elongated_words",
            "num_unique_langs",
            "word_count_mean",
            "sentence_count_mean",
            "average_word_length",
            "average_words_lowercase",
            "average_words_uppercase",
            "average_words_titlecase",
            "tweets_sim_length",
            "tweets_sim_punctuation",
        )
    ]
    specs += [
        _Spec("credibility", FeatureSource.CONTENT, S,
              account_fields=("followers_count",), content_fields=("favorite_count",)),
        _Spec("engagement", FeatureSource.CONTENT, S,
              account_fields=("followers_count", "listed_count"), content_fields=("favorite_count",)),
    ]
    return specs


def _availability(spec: _Spec) -> FrozenSet[str]:
    return frozenset(
        ds for ds in KNOWN_DATASETS
        if set(spec.account_fields) <= RAW_ACCOUNT_FIELDS[ds]
        and set(spec.content_fields) <= RAW_CONTENT_FIELDS[ds]
    )


_ALL_FEATURES: Tuple[FeatureDef, ...] = tuple(
    FeatureDef(name=s.name, source=s.source, family=s.family, availability=_availability(s))
    for s in _feature_specs()
)


@dataclass(frozen=True)
class FeatureCatalog:
    """Ordered, name-unique list of feature definitions for one dataset."""
    dataset_id: str
    features: Tuple[FeatureDef, ...]

    def __post_init__(self):
        names = [f.name for f in self.features]
        if len(names) != len(set(names)):
            raise ValueError("feature names must be unique within a catalog")

    def __len__(self) -> int:
        return len(self.features)

    def __iter__(self):
        return iter(self.features)

    def __contains__(self, name: object) -> bool:
        return any(f.name == name for f in self.features)

    @property
    def names(self) -> List[str]:
        return [f.name for f in self.features]

    def get(self, name: str) -> FeatureDef:
        for f in self.features:
            if f.name == name:
                return f
        raise KeyError(name)

    def by_source(self, source: FeatureSource) -> "FeatureCatalog":
        return FeatureCatalog(
            dataset_id=self.dataset_id,
            features=tuple(f for f in self.features if f.source == source),
        )

    def subset(self, names: Iterable[str]) -> "FeatureCatalog":
        """Restrict to names, keeping catalog order."""
        wanted = set(names)
        return FeatureCatalog(
            dataset_id=self.dataset_id,
            features=tuple(f for f in self.features if f.name in wanted),
        )


def build_catalog(dataset_id: str, sources: Optional[Iterable[FeatureSource]] = None) -> FeatureCatalog:
    """
    Build the feature catalog computable for a dataset.

    Args:
        dataset_id: one of KNOWN_DATASETS, or "all" for the full catalog
        sources: optional restriction to account and/or content features

    Returns:
        FeatureCatalog in canonical order (account features, then content)
    """
    if dataset_id != "all" and dataset_id not in KNOWN_DATASETS:
        raise UnknownDataset(f"Unknown dataset: {dataset_id}")
    allowed = set(sources) if sources is not None else set(FeatureSource)
    features = tuple(
        f for f in _ALL_FEATURES
        if f.source in allowed and (dataset_id == "all" or dataset_id in f.availability)
    )
    return FeatureCatalog(dataset_id=dataset_id, features=features)
