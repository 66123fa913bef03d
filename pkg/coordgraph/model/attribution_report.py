from typing import Dict, List

import numpy as np
from pydantic import BaseModel, ConfigDict

from coordgraph.model.model_config import ModelKind


class AttributionReport(BaseModel):
    """
    Signed integrated gradients per account (rows) and input column, with the
    baseline they were integrated from.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    kind: ModelKind
    subset: str
    account_ids: List[str]
    column_names: List[str]
    attributions: np.ndarray
    baseline: np.ndarray
    baseline_prediction: float
    # Half-width of the neutral band around 0.5 the baseline was averaged over.
    baseline_band: float
    # |sum_i IG_i - (F(x) - F(x'))| per account.
    completeness_residuals: np.ndarray
    steps: int


class DomainAttribution(BaseModel):
    domain: str
    ig: float


class BaselineSummary(BaseModel):
    prediction: float
    band: float
    accounts_in_band: int


class AttributionSummary(BaseModel):
    task: str
    seed: int
    kind: ModelKind
    steps: int
    baseline: BaselineSummary
    # subset -> group -> mean absolute IG.
    groups: Dict[str, Dict[str, float]]
    # subset -> ranked signed domain IG.
    domains: Dict[str, List[DomainAttribution]]
    # subset -> {"max": .., "mean": ..}.
    completeness_residuals: Dict[str, Dict[str, float]]
