"""Shared fixtures: record factories, a small synthetic corpus and hypothesis profiles."""
import os
from datetime import datetime, timedelta, timezone
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from core.hooks import clear_fit_hooks
from core.models.records import AccountRecord, Label, TweetRecord
from core.schemas.config import SyntheticSpec, build_experiment_config, preset_manifest
from core.textstats import set_detector

settings.register_profile("fast", max_examples=25, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("dev", deadline=None)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "dev"))

CRAWL_TIME = datetime(2020, 1, 1, tzinfo=timezone.utc)


@pytest.fixture(autouse=True)
def _isolated_globals():
    clear_fit_hooks()
    yield
    clear_fit_hooks()
    set_detector(None)


@pytest.fixture
def crawl_time():
    return CRAWL_TIME


@pytest.fixture
def make_account():
    def factory(account_id="1", label=Label.HUMAN, age_days=100.0, **fields):
        fields.setdefault("created_at", CRAWL_TIME - timedelta(days=age_days))
        return AccountRecord(id=account_id, crawl_time=CRAWL_TIME, label=label, **fields)
    return factory


@pytest.fixture
def make_tweet():
    def factory(text="", author_id="1", hours=None, **fields):
        created_at = CRAWL_TIME - timedelta(days=30) + timedelta(hours=hours) if hours is not None else None
        return TweetRecord(author_id=author_id, text=text, created_at=created_at, **fields)
    return factory


def synthetic_config(output_dir: Path, n_accounts: int = 60, signal: str = "both", seed: int = 3, **extra):
    manifest = preset_manifest(
        "synthetic",
        synthetic=SyntheticSpec(n_accounts=n_accounts, tweets_per_account=6, signal=signal, seed=seed),
    )
    data = {
        "manifest": manifest.model_dump(mode="json"),
        "seed": seed,
        "output_dir": str(output_dir),
        "cv": {"folds": 3, "seed": seed},
        "selection": {"method": "rf_importance", "k_max": 4, "patience": 2},
        "models": ["random_forest", "dummy_majority"],
    }
    data.update(extra)
    return build_experiment_config(data)


@pytest.fixture
def synthetic_config_factory(tmp_path):
    def factory(name="out", **kwargs):
        return synthetic_config(tmp_path / name, **kwargs)
    return factory
