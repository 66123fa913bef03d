import math
from typing import List

from pydantic import BaseModel, ConfigDict, Field, model_validator

from coordgraph.model.model_config import ModelKind

METRIC_NAMES = ["f1_val", "f1_test", "auc_test"]


class SeedMetrics(BaseModel):
    seed: int
    f1_val: float = Field(ge=0.0, le=100.0)
    f1_test: float = Field(ge=0.0, le=100.0)
    auc_test: float = Field(ge=0.0, le=100.0)
    encoding: str


class MetricResult(BaseModel):
    """
    Percent-scale metrics of one model on one task; values are means over seeds and
    sigmas the sample standard deviation across seeds.
    """
    model_config = ConfigDict(ser_json_inf_nan="constants")

    task: str
    kind: ModelKind
    gamma_max: float
    k_top: int
    # Block-wise majority of the encodings used across seeds.
    encoding: str
    f1_val: float
    f1_val_sigma: float
    f1_test: float
    f1_test_sigma: float
    auc_test: float
    auc_test_sigma: float
    per_seed: List[SeedMetrics]

    @model_validator(mode="after")
    def _check_ranges(self):
        for name in METRIC_NAMES:
            value, sigma = getattr(self, name), getattr(self, f"{name}_sigma")
            if not 0.0 <= value <= 100.0 or sigma < 0.0 or math.isnan(sigma):
                raise ValueError(f"{name}={value} +- {sigma} outside the percent scale")
        return self

    def value(self, metric: str) -> float:
        return getattr(self, metric)

    def sigma(self, metric: str) -> float:
        return getattr(self, f"{metric}_sigma")
