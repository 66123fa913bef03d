from __future__ import annotations

from typing import List

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator


class DomainFrequencyTable(BaseModel):
    """
    Raw training-split domain counts per class, aligned to ``domains`` (sorted).
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    domains: List[str]
    counts_io: np.ndarray
    counts_baseline: np.ndarray

    @model_validator(mode="after")
    def _check_alignment(self) -> DomainFrequencyTable:
        if self.counts_io.shape != (len(self.domains),) or self.counts_baseline.shape != (len(self.domains),):
            raise ValueError("Domain counts are not aligned with the domain list")
        if (self.counts_io < 0).any() or (self.counts_baseline < 0).any():
            raise ValueError("Domain counts must be non-negative")
        return self

    @property
    def totals(self) -> np.ndarray:
        return self.counts_io + self.counts_baseline

    @classmethod
    def from_counts(cls, counts_io: dict, counts_baseline: dict) -> DomainFrequencyTable:
        domains = sorted(set(counts_io) | set(counts_baseline))
        return cls(domains=domains,
                   counts_io=np.array([counts_io.get(d, 0) for d in domains], dtype=np.int64),
                   counts_baseline=np.array([counts_baseline.get(d, 0) for d in domains], dtype=np.int64))
