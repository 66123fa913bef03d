from typing import List

from pydantic import BaseModel, ConfigDict, Field

from coordgraph.model.model_config import ModelKind


class SummaryRow(BaseModel):
    kind: ModelKind
    # Subtask name, or the family letter for harmonic aggregate rows.
    task: str
    aggregate: bool = False
    encoding: str
    f1_val: float
    f1_val_sigma: float
    f1_test: float
    f1_test_sigma: float
    auc_test: float
    auc_test_sigma: float


class TableSummary(BaseModel):
    model_config = ConfigDict(ser_json_inf_nan="constants")

    gamma_max: float
    k_top: int
    seeds: List[int]
    rows: List[SummaryRow] = Field(default_factory=list)
