import math

from pydantic import BaseModel, ConfigDict, Field


class CensorConfig(BaseModel):
    model_config = ConfigDict(ser_json_inf_nan="constants")

    # math.inf disables censorship; 0 keeps only baseline-exclusive domains.
    gamma_max: float = Field(default=0.54, ge=0.0)
    k_top: int = Field(default=2500, ge=1)
    standardize: bool = True

    def describe(self) -> str:
        gamma = "inf" if math.isinf(self.gamma_max) else f"{self.gamma_max:g}"
        return f"gamma_max={gamma}, k_top={self.k_top}"
