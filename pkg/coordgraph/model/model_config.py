from enum import Enum
from typing import List

from pydantic import BaseModel, Field


class ModelKind(str, Enum):
    LR = "LR"
    RF = "RF"
    MLP = "MLP"
    GCN = "GCN"
    MP_GCN_S = "MP_GCN_S"
    MP_GCN = "MP_GCN"

    @property
    def is_deep(self) -> bool:
        return self not in (ModelKind.LR, ModelKind.RF)

    @property
    def uses_graph(self) -> bool:
        return self in (ModelKind.GCN, ModelKind.MP_GCN_S, ModelKind.MP_GCN)

    @property
    def uses_messages(self) -> bool:
        return self in (ModelKind.MP_GCN_S, ModelKind.MP_GCN)


class ModelConfig(BaseModel):
    kind: ModelKind = ModelKind.MLP
    hidden_widths: List[int] = Field(default_factory=lambda: [64, 64])
    dropout_hidden: float = Field(default=0.5, ge=0.0, lt=1.0)
    dropout_message: float = Field(default=0.2, ge=0.0, lt=1.0)
    learning_rate: float = Field(default=1e-4, gt=0.0)
    max_epochs: int = Field(default=2000, ge=1)
    patience: int = Field(default=50, ge=1)
    # MLP only; graph models always train full-graph.
    batch_size: int = Field(default=64, ge=1)
    seed: int = 0

    hidden_activation: str = "relu"
    message_activation: str = "sigmoid"
    message_depth: int = Field(default=2, ge=1)
    message_width: int = Field(default=32, ge=1)
    add_self_loops: bool = False
    edge_transform: str = "raw"

    logreg_c_grid: List[float] = Field(default_factory=lambda: [1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2])
    rf_trees_grid: List[int] = Field(default_factory=lambda: [100, 300])
    # 0 means unlimited depth.
    rf_max_depth_grid: List[int] = Field(default_factory=lambda: [8, 16, 0])
    rf_min_leaf_grid: List[int] = Field(default_factory=lambda: [1, 5])

    threshold: float = Field(default=0.5, gt=0.0, lt=1.0)
