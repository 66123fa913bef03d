from typing import List

import numpy as np
from pydantic import BaseModel, ConfigDict


class NeutralBaseline(BaseModel):
    """
    Mean input of the accounts whose prediction lies within `band` of 0.5.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    vector: np.ndarray
    prediction: float
    band: float
    account_ids: List[str]
