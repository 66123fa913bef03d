from typing import List

from pydantic import BaseModel


class CampaignMatrix(BaseModel):
    campaigns: List[str]
    # values[a][b]: leader in campaigns[a], lagger in campaigns[b].
    values: List[List[float]]
    empty: List[List[bool]]
    near_simultaneous_only: bool
    normalization: str
