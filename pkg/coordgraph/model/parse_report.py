from typing import Dict

from pydantic import BaseModel, Field


class ParseReport(BaseModel):
    rows_read: int = 0
    rows_loaded: int = 0
    rows_rejected: int = 0
    rejected_by_reason: Dict[str, int] = Field(default_factory=dict)

    def reject(self, reason: str, count: int = 1) -> None:
        if count <= 0:
            return
        self.rows_rejected += count
        self.rejected_by_reason[reason] = self.rejected_by_reason.get(reason, 0) + count
