from typing import List

from pydantic import BaseModel, Field

EVENT_COLUMNS = ["account_id", "timestamp", "url", "label", "campaign"]


class EventFormat(BaseModel):
    encoding: str = "utf-8"
    delimiter: str = ","
    columns: List[str] = Field(default_factory=lambda: list(EVENT_COLUMNS))
