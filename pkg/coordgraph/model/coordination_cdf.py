from typing import List

from pydantic import BaseModel


class CoordinationCdf(BaseModel):
    campaign: str
    values: List[float]
    total_count: int
    degenerate: bool = False
