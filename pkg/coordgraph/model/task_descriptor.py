from typing import List

from pydantic import BaseModel


class TaskDescriptor(BaseModel):
    name: str
    operation: str
    # A_k: the earlier campaign of operation k; B_k: the earlier campaigns of every other operation.
    train_campaigns: List[str]
    val_campaign: str
    test_campaign: str

    @property
    def family(self) -> str:
        return self.name[0]
