import numpy as np

from coordgraph.model.model_config import ModelConfig, ModelKind
from coordgraph.model.model_inputs import ModelInputs
from coordgraph.model.trained_model import TrainedModel
from coordgraph.models.classical import train_logreg, train_random_forest
from coordgraph.models.deep_trainer import train_deep


def train_model(kind: ModelKind, inputs: ModelInputs, train_rows: np.ndarray, val_rows: np.ndarray,
                config: ModelConfig, threads: int = 1) -> TrainedModel:
    config = config.model_copy(update={"kind": kind})
    if kind == ModelKind.LR:
        return train_logreg(inputs, train_rows, val_rows, config)
    if kind == ModelKind.RF:
        return train_random_forest(inputs, train_rows, val_rows, config, n_jobs=threads)
    return train_deep(inputs, train_rows, val_rows, config, kind)
