from typing import List

from pydantic import BaseModel

from coordgraph.model.baseline_spec import BaselineSpec
from coordgraph.model.campaign_spec import CampaignSpec


class Scenario(BaseModel):
    name: str
    campaigns: List[CampaignSpec]
    baseline: BaselineSpec
