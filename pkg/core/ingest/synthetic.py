"""
Seeded synthetic corpus with a controllable class signal.

`signal` chooses where bots differ from humans:
    both     profile fields and tweets
    account  profile fields only
    content  tweets only
    none     no difference (labels are noise)
"""
import logging
from datetime import timedelta
from typing import Dict, List

import numpy as np

from core.ingest.corpus import RawCorpus
from core.models.records import AccountRecord, Label, TweetRecord
from core.schemas.config import DEFAULT_PLATFORM_COLORS, DatasetManifest, SyntheticSpec

logger = logging.getLogger(__name__)

_WORDS = (
    "the", "day", "people", "city", "music", "news", "game", "love", "team", "work",
    "coffee", "morning", "friends", "weekend", "movie", "book", "great", "really",
    "think", "today", "new", "time", "home", "happy", "watch", "follow", "free", "win",
)
_HUMAN_SOURCES = (
    '<a href="http://twitter.com/download/iphone" rel="nofollow">Twitter for iPhone</a>',
    '<a href="http://twitter.com/download/android" rel="nofollow">Twitter for Android</a>',
    '<a href="http://twitter.com" rel="nofollow">Twitter Web Client</a>',
    '<a href="http://instagram.com" rel="nofollow">Instagram</a>',
)
_BOT_SOURCES = (
    '<a href="http://tweetadder.com" rel="nofollow">TweetAdder v4</a>',
    '<a href="http://example.com/api" rel="nofollow">promo api</a>',
)
_PALETTE = ("1A1A1A", "FF0000", "00FF00", "0000FF", "FFFFFF", "000000", "ABB8C2", "F5F8FA",
            "9266CC", "E81C4F", "19CF86", "3B94D9")


class SyntheticGenerator:
    """Builds a RawCorpus whose distributions depend on the label only where `signal` says so."""

    def __init__(self, spec: SyntheticSpec, manifest: DatasetManifest):
        self.spec = spec
        self.manifest = manifest
        self.rng = np.random.default_rng(spec.seed)

    def _acts_bot(self, is_bot: bool, channel: str) -> bool:
        return is_bot and self.spec.signal in ("both", channel)

    def _text(self, bot_like: bool) -> str:
        n = int(self.rng.integers(4, 14))
        words = [_WORDS[i] for i in self.rng.integers(0, len(_WORDS), size=n)]
        if bot_like:
            words = ["WIN", "free", "followers"] + words[:4]
            words.append(f"http://spam.example/{int(self.rng.integers(0, 50))}")
            if self.rng.random() < 0.5:
                words.append("#promo")
            return " ".join(words)
        text = " ".join(words).capitalize() + "."
        if self.rng.random() < 0.2:
            text += f" @friend{int(self.rng.integers(0, 30))}"
        if self.rng.random() < 0.1:
            text += " #weekend"
        return text

    def _account(self, index: int, is_bot: bool) -> AccountRecord:
        crawl = self.manifest.crawl_time
        bot_like = self._acts_bot(is_bot, "account")
        age_days = int(self.rng.integers(2, 90)) if bot_like else int(self.rng.integers(300, 3000))
        followers = int(self.rng.integers(0, 40)) if bot_like else int(self.rng.integers(50, 2000))
        friends = int(self.rng.integers(500, 2000)) if bot_like else int(self.rng.integers(50, 800))
        defaults = self.manifest.platform_defaults or DEFAULT_PLATFORM_COLORS

        def color(field: str) -> str:
            if bot_like or self.rng.random() < 0.3:
                return defaults[field]
            return _PALETTE[int(self.rng.integers(0, len(_PALETTE)))]

        handle = f"user{index:05d}"
        if bot_like:
            digits = int(self.rng.integers(10**4, 10**7))
            handle = f"promo{digits}bot" if self.rng.random() < 0.3 else f"x{digits}"
        return AccountRecord(
            id=f"{index:06d}",
            created_at=crawl - timedelta(days=age_days, hours=int(self.rng.integers(0, 24))),
            crawl_time=crawl,
            label=Label.BOT if is_bot else Label.HUMAN,
            name=handle if bot_like else f"Person {index}",
            screen_name=handle,
            description="" if bot_like and self.rng.random() < 0.7 else "I like music and coffee. Views are my own.",
            location="" if bot_like else "Somewhere",
            url=None if bot_like else f"http://blog.example/{index}",
            verified=(not bot_like) and self.rng.random() < 0.05,
            followers_count=followers,
            friends_count=friends,
            favourites_count=int(self.rng.integers(0, 10)) if bot_like else int(self.rng.integers(100, 5000)),
            listed_count=0 if bot_like else int(self.rng.integers(0, 50)),
            statuses_count=int(self.rng.integers(1000, 20000)) if bot_like else int(self.rng.integers(100, 5000)),
            lang="en",
            geo_enabled=(not bot_like) and self.rng.random() < 0.4,
            default_profile=bot_like,
            default_profile_image=bot_like and self.rng.random() < 0.8,
            profile_background_color=color("profile_background_color"),
            profile_link_color=color("profile_link_color"),
            profile_sidebar_border_color=color("profile_sidebar_border_color"),
            profile_sidebar_fill_color=color("profile_sidebar_fill_color"),
            profile_text_color=color("profile_text_color"),
            profile_background_image_url=(
                f"http://abs.twimg.com/{self.manifest.default_background_image}.png" if bot_like
                else (None if self.rng.random() < 0.5 else "http://img.example/bg.png")
            ),
            profile_background_tile=(not bot_like) and self.rng.random() < 0.2,
            profile_use_background_image=True,
        )

    def _tweets(self, account: AccountRecord, is_bot: bool) -> List[TweetRecord]:
        bot_like = self._acts_bot(is_bot, "content")
        tweets = []
        t = account.created_at + timedelta(hours=1)
        for _ in range(self.spec.tweets_per_account):
            gap = 0.5 if bot_like else float(self.rng.exponential(20.0))
            t = t + timedelta(hours=gap)
            retweet = self.rng.random() < (0.7 if bot_like else 0.2)
            text = self._text(bot_like)
            if retweet:
                text = f"RT @source{int(self.rng.integers(0, 5))}: {text}"
            reply = (not retweet) and (not bot_like) and self.rng.random() < 0.2
            sources = _BOT_SOURCES if bot_like else _HUMAN_SOURCES
            tweets.append(TweetRecord(
                author_id=account.id,
                text=text,
                created_at=t,
                source=sources[int(self.rng.integers(0, len(sources)))],
                is_retweet=retweet,
                is_reply=reply,
                num_hashtags=text.count("#"),
                num_mentions=text.count("@"),
                num_urls=text.count("http"),
                retweet_count=int(self.rng.integers(0, 3)) if bot_like else int(self.rng.integers(0, 30)),
                favorite_count=0 if bot_like else int(self.rng.integers(0, 40)),
            ))
        return tweets

    def generate(self) -> RawCorpus:
        corpus = RawCorpus()
        n_bots = int(round(self.spec.n_accounts * self.spec.bot_fraction))
        n_bots = min(max(n_bots, 1), self.spec.n_accounts - 1)
        labels = np.array([True] * n_bots + [False] * (self.spec.n_accounts - n_bots))
        self.rng.shuffle(labels)
        for index, is_bot in enumerate(labels.tolist()):
            account = self._account(index, is_bot)
            corpus.add_account(account, "bot" if is_bot else "human")
            for tweet in self._tweets(account, is_bot):
                corpus.add_tweet(tweet)
        logger.info(
            "[%s] generated %d accounts (%d bots), signal=%s",
            self.manifest.dataset_id, self.spec.n_accounts, n_bots, self.spec.signal,
        )
        return corpus


def generate_synthetic(manifest: DatasetManifest) -> RawCorpus:
    spec = manifest.synthetic or SyntheticSpec()
    return SyntheticGenerator(spec, manifest).generate()
