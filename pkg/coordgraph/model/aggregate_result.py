from typing import List

from pydantic import BaseModel, Field, model_validator


class AggregateResult(BaseModel):
    """
    Harmonic mean of subtask values with the propagated uncertainty.
    """
    metric: str = ""
    value: float
    sigma: float = Field(ge=0.0)
    subtasks: List[str] = Field(default_factory=list)
    inputs: List[float] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_bounds(self):
        # Relative slack for rounding in n / sum(1/x).
        if self.inputs:
            slack = 1e-9 * max(self.inputs)
            if not min(self.inputs) - slack <= self.value <= max(self.inputs) + slack:
                raise ValueError(f"Harmonic mean {self.value} outside [{min(self.inputs)}, {max(self.inputs)}]")
        return self
