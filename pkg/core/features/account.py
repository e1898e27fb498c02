"""
Account-based features: growth rates, ratios, name/description stylometry,
description readability and retained raw profile fields.
"""
from typing import Dict

from core.features.base import FeatureBlock
from core.models.catalog import READABILITY_INDICES
from core.models.records import AccountRecord
from core.textstats import (
    casing_fractions, extract_entities, mean_bigram_freq, readability,
    shannon_entropy, string_similarity, tokenize
)
from core.textstats.stylometry import contains_bot, digit_count

SECONDS_PER_DAY = 86400.0


def user_age_days(account: AccountRecord) -> float:
    """Days between creation and crawl, floored at one day."""
    age = (account.crawl_time - account.created_at).total_seconds() / SECONDS_PER_DAY
    return max(age, 1.0)


def account_ratios(account: AccountRecord) -> Dict[str, float]:
    age = user_age_days(account)
    followers = account.followers_count
    friends = account.friends_count
    return {
        "followers_growth_rate": followers / age,
        "friends_growth_rate": friends / age,
        "favourites_growth_rate": account.favourites_count / age,
        "listed_growth_rate": account.listed_count / age,
        "followers_friends_ratio": followers / max(friends, 1),
        "average_favorites": account.favourites_count / max(followers, 1),
        "reputation": followers / max(followers + friends, 1),
        "user_age": age,
        "tweet_freq": account.statuses_count / age,
    }


def name_features(account: AccountRecord) -> Dict[str, float]:
    """
    Length, digit, entropy and bigram statistics of name, screen name and
    description, plus entity counts and word statistics of the description.

    Entity counts use the raw description; word statistics use the
    description with entities stripped.
    """
    name = account.name
    screen_name = account.screen_name
    description = account.description

    entities = extract_entities(description)
    tokens = tokenize(entities.stripped)
    lower, upper, title = casing_fractions(tokens)
    words = tokens.words

    return {
        "screen_name_length": float(len(screen_name)),
        "name_length": float(len(name)),
        "description_length": float(len(description)),
        "description_digits_count": float(digit_count(description)),
        "description_mean_bigram_freq": mean_bigram_freq(description),
        "screen_name_digits_count": float(digit_count(screen_name)),
        "name_digits_count": float(digit_count(name)),
        "screen_name_mean_bigram_freq": mean_bigram_freq(screen_name),
        "screen_name_entropy": shannon_entropy(screen_name),
        "name_mean_bigram_freq": mean_bigram_freq(name),
        "name_entropy": shannon_entropy(name),
        "description_entropy": shannon_entropy(description),
        "name_sim": string_similarity(name, screen_name),
        "name_ratio": len(name) / max(len(screen_name), 1),
        "name_contains_bot": float(contains_bot(name)),
        "screen_name_contains_bot": float(contains_bot(screen_name)),
        "description_contains_bot": float(contains_bot(description)),
        "description_hashtag_count": float(len(entities.hashtags)),
        "description_url_count": float(len(entities.urls)),
        "description_unique_url_count": float(len(set(entities.urls))),
        "description_unique_mention_count": float(len({m.lower() for m in entities.mentions})),
        "description_fraction_of_words_lowercase": lower,
        "description_fraction_of_words_uppercase": upper,
        "description_fraction_of_words_tilecase": title,
        "description_word_count": float(tokens.word_count),
        "description_sentence_count": float(tokens.sentence_count),
        "description_average_word_length": (
            sum(len(w) for w in words) / len(words) if words else 0.0
        ),
        "description_average_words_per_sentence": (
            tokens.word_count / tokens.sentence_count if tokens.sentence_count else 0.0
        ),
    }


def description_readability(account: AccountRecord) -> FeatureBlock:
    names = [f"description_{idx}" for idx in READABILITY_INDICES]
    scores = readability(tokenize(extract_entities(account.description).stripped))
    if scores.degenerate:
        return FeatureBlock.all_masked(names)
    return FeatureBlock(values=dict(zip(names, scores.values())))


def raw_account_features(account: AccountRecord) -> Dict[str, float]:
    return {
        "followers_count": float(account.followers_count),
        "friends_count": float(account.friends_count),
        "favourites_count": float(account.favourites_count),
        "listed_count": float(account.listed_count),
        "statuses_count": float(account.statuses_count),
        "verified": float(account.verified),
        "protected": float(account.protected),
        "geo_enabled": float(account.geo_enabled),
        "default_profile": float(account.default_profile),
        "default_profile_image": float(account.default_profile_image),
        "profile_use_background_image": float(account.profile_use_background_image),
        "has_url": float(bool(account.url)),
        "has_location": float(bool(account.location.strip())),
    }

