from typing import List

from pydantic import BaseModel


class SplitManifest(BaseModel):
    task: str
    seed: int
    train: List[str]
    val: List[str]
    test: List[str]
