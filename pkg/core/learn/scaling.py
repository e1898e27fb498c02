from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from sklearn.preprocessing import MinMaxScaler

from core.errors import EmptyDataset
from core.hooks import notify_fit


@dataclass
class Scaler:
    """Min-max scaler fitted on training rows; applied values are clamped to [0, 1]."""
    scaler: MinMaxScaler
    constant: np.ndarray

    def apply(self, matrix: np.ndarray) -> np.ndarray:
        out = self.scaler.transform(np.asarray(matrix, dtype=float))
        out[:, self.constant] = 0.0
        return out


def normalize_fit(matrix: np.ndarray, rows: Optional[Sequence[int]] = None) -> Scaler:
    """
    Fit per-feature min-max scaling.

    Args:
        matrix: training rows only
        rows: ids of those rows, reported to fit hooks (defaults to 0..n-1)
    """
    matrix = np.asarray(matrix, dtype=float)
    if matrix.size == 0:
        raise EmptyDataset("Cannot fit scaler on an empty matrix")
    notify_fit("scaler", range(matrix.shape[0]) if rows is None else rows)
    scaler = MinMaxScaler(clip=True).fit(matrix)
    return Scaler(scaler=scaler, constant=scaler.data_range_ == 0)


def normalize_apply(scaler: Scaler, matrix: np.ndarray) -> np.ndarray:
    return scaler.apply(matrix)
