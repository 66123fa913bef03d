from __future__ import annotations

from typing import List

from pydantic import BaseModel, model_validator

from coordgraph.model.share_event import ShareEvent

BASELINE_CAMPAIGN = "baseline"


class AccountRecord(BaseModel):
    account_id: str
    label: int
    campaign: str
    events: List[ShareEvent]
    first_active: int
    last_active: int

    @model_validator(mode="after")
    def _check_invariants(self) -> AccountRecord:
        if self.label not in (0, 1):
            raise ValueError(f"label must be 0 or 1, got {self.label}")
        if self.label != int(self.campaign != BASELINE_CAMPAIGN):
            raise ValueError(f"label {self.label} contradicts campaign {self.campaign!r}")
        timestamps = [e.timestamp for e in self.events]
        if timestamps != sorted(timestamps):
            raise ValueError(f"events of {self.account_id} are not sorted by timestamp")
        return self
