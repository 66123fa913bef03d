from typing import List

from pydantic import BaseModel, Field

from coordgraph.model.model_config import ModelKind


class EvaluationConfig(BaseModel):
    tasks: List[str] = Field(default_factory=lambda: ["A1", "A2", "A3", "B1", "B2", "B3"])
    models: List[ModelKind] = Field(default_factory=lambda: [ModelKind.MLP])
    # One repeated split per seed; sigma is taken across seeds.
    seeds: List[int] = Field(default_factory=lambda: [0, 1, 2, 3, 4])
    val_fraction: float = Field(default=0.2, gt=0.0, lt=1.0)
    baseline_train_fraction: float = Field(default=0.6, gt=0.0, lt=1.0)
    baseline_val_fraction: float = Field(default=0.2, gt=0.0, lt=1.0)
    encoding_search: bool = False
    # "product" divides by |A|*|B|, "geometric" by sqrt(|A|*|B|).
    matrix_normalization: str = "product"
