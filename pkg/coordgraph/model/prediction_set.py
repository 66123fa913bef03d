from typing import List

import numpy as np
from pydantic import BaseModel, ConfigDict


class PredictionSet(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    account_ids: List[str]
    probabilities: np.ndarray
    # 1 where probability >= threshold.
    labels: np.ndarray
    threshold: float = 0.5
