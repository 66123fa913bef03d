from pydantic import BaseModel, Field

QUADRATURE_METHODS = {
    "trapezoid": "riemann_trapezoid",
    "riemann_left": "riemann_left",
    "riemann_right": "riemann_right",
    "riemann_middle": "riemann_middle",
    "gausslegendre": "gausslegendre",
}


class IGConfig(BaseModel):
    steps: int = Field(default=256, ge=2)
    quadrature: str = "trapezoid"
    # "probability" attributes F(x) = sigmoid(logit); "logit" attributes the pre-sigmoid output.
    target: str = "probability"
    neutral_band: float = Field(default=0.1, gt=0.0, lt=0.5)
    band_step: float = Field(default=0.05, gt=0.0)
    max_band: float = Field(default=0.3, gt=0.0, lt=0.5)
    internal_batch_size: int = Field(default=64, ge=1)
    top_domains: int = Field(default=20, ge=1)

    @property
    def captum_method(self) -> str:
        return QUADRATURE_METHODS[self.quadrature]
