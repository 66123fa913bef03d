import math
from typing import List

from pydantic import BaseModel, ConfigDict, Field

from coordgraph.model.model_config import ModelKind


class SweepConfig(BaseModel):
    model_config = ConfigDict(ser_json_inf_nan="constants")

    gamma_values: List[float] = Field(default_factory=lambda: [0.0, 0.25, 0.43, 0.54, 0.67, 1.0, 2.0, math.inf])
    k_values: List[int] = Field(default_factory=lambda: [500, 1000, 2000, 2500])
    model: ModelKind = ModelKind.MLP
