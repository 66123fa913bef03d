from pydantic import BaseModel


class SynthConfig(BaseModel):
    scenario: str = "three-ops"
    seed: int = 7
