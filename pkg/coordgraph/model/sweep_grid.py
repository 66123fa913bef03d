from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from coordgraph.model.aggregate_result import AggregateResult
from coordgraph.model.metric_result import MetricResult
from coordgraph.model.model_config import ModelKind


class SweepCell(BaseModel):
    model_config = ConfigDict(ser_json_inf_nan="constants")

    gamma_max: float
    k_top: int
    status: str = "ok"
    message: Optional[str] = None
    results: List[MetricResult] = Field(default_factory=list)
    # family ("A" / "B") -> metric -> aggregate.
    aggregates: Dict[str, Dict[str, AggregateResult]] = Field(default_factory=dict)


class SweepGrid(BaseModel):
    model_config = ConfigDict(ser_json_inf_nan="constants")

    model: ModelKind
    tasks: List[str]
    gamma_values: List[float]
    k_values: List[int]
    cells: List[SweepCell]

    @property
    def failed_cells(self) -> List[SweepCell]:
        return [cell for cell in self.cells if cell.status != "ok"]
