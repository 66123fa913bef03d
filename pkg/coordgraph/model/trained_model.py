from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from coordgraph.model.epoch_record import EpochRecord
from coordgraph.model.input_layout import InputLayout
from coordgraph.model.model_config import ModelConfig, ModelKind


class TrainedModel(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    kind: ModelKind
    layout: InputLayout
    config: ModelConfig
    seed: int
    # torch.nn.Module for deep kinds, fitted sklearn estimator for LR/RF.
    estimator: Any
    training_log: List[EpochRecord] = Field(default_factory=list)
    first_batch_loss: Optional[float] = None
    selected_hyperparameters: Dict[str, Any] = Field(default_factory=dict)
    best_val_f1: Optional[float] = None
