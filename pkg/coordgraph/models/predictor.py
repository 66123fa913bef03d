import logging
from typing import Optional, Sequence, Tuple

import numpy as np
import torch
from torch import Tensor, nn

from coordgraph.exceptions import LayoutMismatchError, NonFiniteInputError
from coordgraph.model.model_inputs import ModelInputs
from coordgraph.model.prediction_set import PredictionSet
from coordgraph.model.trained_model import TrainedModel

log = logging.getLogger(__name__)

GraphTensors = Tuple[Tensor, Optional[Tensor], Optional[Tensor]]


def check_finite(features: np.ndarray) -> None:
    finite = np.isfinite(features)
    if not finite.all():
        row, column = np.argwhere(~finite)[0]
        raise NonFiniteInputError(feature_index=int(column), row_index=int(row))


def to_tensors(inputs: ModelInputs, dtype: torch.dtype = torch.float32) -> GraphTensors:
    check_finite(inputs.features)
    x = torch.as_tensor(inputs.features, dtype=dtype)
    edge_index = None
    edge_vectors = None
    if inputs.edge_index is not None:
        edge_index = torch.as_tensor(inputs.edge_index, dtype=torch.long)
    if inputs.edge_vectors is not None:
        edge_vectors = torch.as_tensor(inputs.edge_vectors, dtype=dtype)
    return x, edge_index, edge_vectors


def mlp_forward(network: nn.Module, x: Tensor, train_mode: bool = False) -> Tensor:
    """
    Probability per row. Dropout is active only in train_mode.
    """
    if torch.isnan(x).any():
        row, column = torch.nonzero(torch.isnan(x))[0].tolist()
        raise NonFiniteInputError(feature_index=column, row_index=row)
    network.train(train_mode)
    return torch.sigmoid(network(x))


def check_layout(model: TrainedModel, inputs: ModelInputs) -> None:
    if model.layout != inputs.layout:
        expected, actual = model.layout.column_names, inputs.layout.column_names
        mismatch = next((k for k, (a, b) in enumerate(zip(expected, actual)) if a != b),
                        min(len(expected), len(actual)))
        raise LayoutMismatchError(f"{model.kind.value} model expects {len(expected)} columns, inputs have "
                                  f"{len(actual)}; first difference at column {mismatch}")
    if model.kind.uses_graph and inputs.edge_index is None:
        raise LayoutMismatchError(f"{model.kind.value} model needs the censored graph in its inputs")
    if model.kind.uses_messages and inputs.edge_vectors is None:
        raise LayoutMismatchError(f"{model.kind.value} model needs co-URL edge vectors in its inputs")


def predict_probabilities(model: TrainedModel, inputs: ModelInputs) -> np.ndarray:
    """
    Probability for every row of the inputs. Graph models run on the full graph.
    """
    check_layout(model, inputs)
    if not model.kind.is_deep:
        check_finite(inputs.features)
        return model.estimator.predict_proba(inputs.features)[:, 1].astype(np.float64)

    network: nn.Module = model.estimator
    dtype = next(network.parameters()).dtype
    x, edge_index, edge_vectors = to_tensors(inputs, dtype)
    with torch.no_grad():
        if model.kind.uses_graph:
            network.eval()
            probabilities = torch.sigmoid(network(x, edge_index, edge_vectors))
        else:
            probabilities = mlp_forward(network, x, train_mode=False)
    return probabilities.double().numpy()


def predict(model: TrainedModel, inputs: ModelInputs, account_ids: Optional[Sequence[str]] = None) -> PredictionSet:
    """
    Probabilities and hard labels at the model's threshold; a probability equal to the
    threshold is labeled positive.
    """
    probabilities = predict_probabilities(model, inputs)
    ids = list(inputs.account_ids)
    if account_ids is not None:
        rows = inputs.rows_of(list(account_ids))
        probabilities = probabilities[rows]
        ids = list(account_ids)
    threshold = model.config.threshold
    labels = (probabilities >= threshold).astype(np.int64)
    return PredictionSet(account_ids=ids, probabilities=probabilities, labels=labels, threshold=threshold)
