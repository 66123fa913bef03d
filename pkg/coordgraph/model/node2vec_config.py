from pydantic import BaseModel, Field


class Node2VecConfig(BaseModel):
    p: float = Field(default=1.0, gt=0.0)
    q: float = Field(default=1.0, gt=0.0)
    walk_length: int = Field(default=80, ge=2)
    walks_per_node: int = Field(default=10, ge=1)
    window: int = Field(default=10, ge=1)
    negative: int = Field(default=5, ge=1)
    epochs: int = Field(default=5, ge=1)
