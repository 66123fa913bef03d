from __future__ import annotations

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

NUM_BINS = 100
BIN_SECONDS = 60
WINDOW_SECONDS = NUM_BINS * BIN_SECONDS


class CoUrlMap(BaseModel):
    """
    Sparse map (account_i, account_j) -> 100-bin interarrival histogram.

    Row p of ``counts`` is the histogram of pair (account_i[p], account_j[p]);
    column tau-1 counts co-URLs with tau-1 < t <= tau minutes. Pairs are sorted by
    (account_i, account_j) and never repeat.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    account_i: np.ndarray
    account_j: np.ndarray
    counts: np.ndarray
    is_symmetric: bool = False

    @model_validator(mode="after")
    def _check_shape(self) -> CoUrlMap:
        pairs = len(self.account_i)
        if len(self.account_j) != pairs or self.counts.shape != (pairs, NUM_BINS):
            raise ValueError(f"Co-URL map arrays disagree: {pairs} pairs, counts {self.counts.shape}")
        if pairs and np.any(self.account_i == self.account_j):
            raise ValueError("Co-URL map contains self pairs")
        if pairs and self.counts.min() < 0:
            raise ValueError("Co-URL counts must be non-negative")
        return self

    @classmethod
    def empty(cls, is_symmetric: bool = False) -> CoUrlMap:
        return cls(account_i=np.array([], dtype=object), account_j=np.array([], dtype=object),
                   counts=np.zeros((0, NUM_BINS), dtype=np.int64), is_symmetric=is_symmetric)

    def __len__(self) -> int:
        return len(self.account_i)

    def vector(self, account_i: str, account_j: str) -> np.ndarray:
        mask = (self.account_i == account_i) & (self.account_j == account_j)
        if not mask.any():
            return np.zeros(NUM_BINS, dtype=np.int64)
        return self.counts[np.flatnonzero(mask)[0]].copy()

    def as_dict(self) -> dict:
        return {(i, j): self.counts[p] for p, (i, j) in enumerate(zip(self.account_i, self.account_j))}

    def total_mass(self) -> int:
        return int(self.counts.sum())

    def restrict(self, account_ids) -> CoUrlMap:
        keep = np.isin(self.account_i, list(account_ids)) & np.isin(self.account_j, list(account_ids))
        return CoUrlMap(account_i=self.account_i[keep], account_j=self.account_j[keep],
                        counts=self.counts[keep], is_symmetric=self.is_symmetric)
