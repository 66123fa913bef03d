from typing import List

import numpy as np
from pydantic import BaseModel, ConfigDict


class CensoredFeatureSet(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    retained_domains: List[str]
    account_ids: List[str]
    # Integer shares of each retained domain, rows aligned to account_ids.
    raw_counts: np.ndarray
    # Train-split z-score of raw_counts; equals raw_counts as float when standardization is off.
    features: np.ndarray
    mean: np.ndarray
    std: np.ndarray
