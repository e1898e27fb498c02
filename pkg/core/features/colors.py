"""
Profile color binning.

Each color field is mapped to one of three indicator features: the platform
default, one of the eight most frequent non-default colors of the fitting
split ("common"), or anything else ("uncommon").
"""
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Sequence, Tuple

import numpy as np

from core.errors import EmptyDataset
from core.hooks import notify_fit
from core.features.base import FeatureBlock
from core.models.catalog import COLOR_BIN_FEATURES, color_bin_names
from core.models.records import COLOR_FIELDS, AccountRecord, normalize_hex_color

logger = logging.getLogger(__name__)

COMMON_SET_SIZE = 8
BACKGROUND_IMAGE_NONE = 0.0
BACKGROUND_IMAGE_DEFAULT = 1.0
BACKGROUND_IMAGE_OTHER = 2.0


@dataclass(frozen=True)
class ColorBinningModel:
    defaults: Dict[str, str]
    common: Dict[str, Tuple[str, ...]]
    default_background_image: str = ""
    fitted_on: int = 0

    def bin_of(self, color_field: str, value: Optional[str]) -> Optional[int]:
        """0 = default, 1 = common, 2 = uncommon, None = absent."""
        if value is None:
            return None
        if value == self.defaults.get(color_field):
            return 0
        if value in self.common.get(color_field, ()):
            return 1
        return 2


def fit_color_model(
    accounts: Sequence[AccountRecord],
    defaults: Mapping[str, str],
    default_background_image: str = "",
) -> ColorBinningModel:
    """
    Fit the common-color sets on a split of accounts.

    Args:
        accounts: fitting split; must be non-empty
        defaults: platform default color per color field
        default_background_image: substring marking the platform default background image

    Returns:
        ColorBinningModel with at most eight common colors per field
    """
    if not accounts:
        raise EmptyDataset("Cannot fit color model on zero accounts")
    notify_fit("color_model", [a.id for a in accounts])
    normalized_defaults = {f: normalize_hex_color(defaults.get(f)) or "" for f in COLOR_FIELDS}
    common: Dict[str, Tuple[str, ...]] = {}
    for color_field in COLOR_FIELDS:
        default = normalized_defaults[color_field]
        counts = Counter(
            value for value in (a.color(color_field) for a in accounts)
            if value is not None and value != default
        )
        ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
        common[color_field] = tuple(color for color, _ in ranked[:COMMON_SET_SIZE])
    logger.debug("[color_model] fitted on %d accounts", len(accounts))
    return ColorBinningModel(
        defaults=normalized_defaults,
        common=common,
        default_background_image=default_background_image,
        fitted_on=len(accounts),
    )


def background_image_category(url: Optional[str], default_marker: str) -> float:
    if not url or not url.strip():
        return BACKGROUND_IMAGE_NONE
    if default_marker and default_marker in url:
        return BACKGROUND_IMAGE_DEFAULT
    return BACKGROUND_IMAGE_OTHER


def color_features(account: AccountRecord, model: ColorBinningModel) -> FeatureBlock:
    block = FeatureBlock()
    for color_field, _, _ in COLOR_BIN_FEATURES:
        names = color_bin_names(color_field)
        which = model.bin_of(color_field, account.color(color_field))
        if which is None:
            block.mask(names)
            continue
        for i, name in enumerate(names):
            block.values[name] = 1.0 if i == which else 0.0
    block.values["has_profile_background_tile"] = float(account.profile_background_tile)
    block.values["profile_background_image_url_default_other_none"] = background_image_category(
        account.profile_background_image_url, model.default_background_image
    )
    return block


@dataclass
class ColorRefitter:
    """
    Refits the color model on a training split and rewrites the color-bin
    columns of a feature matrix from it.

    `accounts` must be aligned with the matrix rows.
    """
    accounts: Sequence[AccountRecord]
    defaults: Mapping[str, str]
    default_background_image: str = ""
    model: Optional[ColorBinningModel] = field(default=None, init=False)

    def fit(self, rows: Sequence[int]) -> "ColorRefitter":
        self.model = fit_color_model(
            [self.accounts[i] for i in rows], self.defaults, self.default_background_image
        )
        return self

    def transform(self, matrix: np.ndarray, columns: Sequence[str], rows: Sequence[int]) -> np.ndarray:
        if self.model is None:
            raise RuntimeError("ColorRefitter.transform called before fit")
        bin_columns = {
            name: j for j, name in enumerate(columns)
            if any(name in color_bin_names(f) for f in COLOR_FIELDS)
        }
        if not bin_columns:
            return matrix
        out = matrix.copy()
        for out_row, account_row in enumerate(rows):
            values = color_features(self.accounts[account_row], self.model).values
            for name, j in bin_columns.items():
                out[out_row, j] = values[name]
        return out
