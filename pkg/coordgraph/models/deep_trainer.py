import copy
import logging
import math
from typing import Iterator, Optional

import numpy as np
import torch
import torch.nn.functional as F
from sklearn.metrics import f1_score
from torch import Tensor, nn

from coordgraph.exceptions import DegenerateDataError, TrainingDivergedError
from coordgraph.model.epoch_record import EpochRecord
from coordgraph.model.model_config import ModelConfig, ModelKind
from coordgraph.model.model_inputs import ModelInputs
from coordgraph.model.trained_model import TrainedModel
from coordgraph.models.networks import build_network
from coordgraph.models.predictor import to_tensors

log = logging.getLogger(__name__)


def train_deep(inputs: ModelInputs, train_rows: np.ndarray, val_rows: np.ndarray, config: ModelConfig,
               kind: Optional[ModelKind] = None, dtype: torch.dtype = torch.float32) -> TrainedModel:
    """
    Adam on binary cross-entropy. The MLP trains on shuffled minibatches of the train
    rows; graph models run the full graph every step with the loss masked to train
    nodes. The epoch with the best validation F1 (lower validation loss on ties) is
    restored at the end. Training stops after `patience` epochs in which neither the
    validation F1 nor the validation loss improved.
    """
    kind = kind or config.kind
    if not kind.is_deep:
        raise ValueError(f"{kind.value} is not trained by gradient descent")
    if kind.uses_graph and inputs.edge_index is None:
        raise ValueError(f"{kind.value} needs the censored graph")

    train_rows = torch.as_tensor(np.asarray(train_rows), dtype=torch.long)
    val_rows = torch.as_tensor(np.asarray(val_rows), dtype=torch.long)
    if len(val_rows) == 0:
        log.warning("No validation rows; model selection falls back to the train rows.")
        val_rows = train_rows

    x, edge_index, edge_vectors = to_tensors(inputs, dtype)
    y = torch.as_tensor(inputs.labels, dtype=dtype)
    if torch.unique(y[train_rows]).numel() < 2:
        raise DegenerateDataError(f"{kind.value}: training labels contain a single class")

    network = build_network(kind, x.size(1), config).to(dtype)
    optimizer = torch.optim.Adam(network.parameters(), lr=config.learning_rate)
    generator = torch.Generator().manual_seed(config.seed)

    training_log = []
    first_batch_loss: Optional[float] = None
    last_finite_loss: Optional[float] = None
    best_state, best_f1, best_loss = None, -1.0, math.inf
    lowest_val_loss, highest_val_f1, last_improvement = math.inf, -1.0, 0

    for epoch in range(1, config.max_epochs + 1):
        network.train()
        total, seen = 0.0, 0
        for batch in _batches(kind, train_rows, config.batch_size, generator):
            optimizer.zero_grad()
            if kind.uses_graph:
                logits = network(x, edge_index, edge_vectors)[batch]
            else:
                logits = network(x[batch])
            loss = F.binary_cross_entropy_with_logits(logits, y[batch])
            if not torch.isfinite(loss):
                raise TrainingDivergedError(f"{kind.value}: non-finite training loss", epoch, last_finite_loss)
            if first_batch_loss is None:
                first_batch_loss = float(loss)
            loss.backward()
            optimizer.step()
            last_finite_loss = float(loss)
            total += float(loss) * len(batch)
            seen += len(batch)

        val_loss, val_f1 = _validate(network, kind, x, edge_index, edge_vectors, y, val_rows,
                                     config.threshold)
        if not math.isfinite(val_loss):
            raise TrainingDivergedError(f"{kind.value}: non-finite validation loss", epoch, last_finite_loss)
        training_log.append(EpochRecord(epoch=epoch, loss=total / seen, val_loss=val_loss, val_f1=val_f1))
        log.debug("%s epoch %d: loss %.6f, val loss %.6f, val F1 %.4f",
                  kind.value, epoch, total / seen, val_loss, val_f1)

        if val_f1 > best_f1 or (val_f1 == best_f1 and val_loss < best_loss):
            best_state, best_f1, best_loss = copy.deepcopy(network.state_dict()), val_f1, val_loss
        if val_f1 > highest_val_f1 or val_loss < lowest_val_loss:
            last_improvement = epoch
        highest_val_f1 = max(highest_val_f1, val_f1)
        lowest_val_loss = min(lowest_val_loss, val_loss)
        if epoch - last_improvement >= config.patience:
            log.debug("%s early stop at epoch %d.", kind.value, epoch)
            break

    network.load_state_dict(best_state)
    network.eval()
    best_epoch = next(r.epoch for r in training_log if r.val_f1 == best_f1 and r.val_loss == best_loss)
    log.info("%s training finished.", kind.value)
    log.info("|-Epochs: %d", len(training_log))
    log.info("|-Best epoch: %d", best_epoch)
    log.info("|-F1(val): %.2f", 100 * best_f1)
    return TrainedModel(kind=kind, layout=inputs.layout, config=config, seed=config.seed, estimator=network,
                        training_log=training_log, first_batch_loss=first_batch_loss,
                        selected_hyperparameters={"best_epoch": best_epoch}, best_val_f1=best_f1)


def _batches(kind: ModelKind, train_rows: Tensor, batch_size: int, generator: torch.Generator) -> Iterator[Tensor]:
    if kind.uses_graph:
        yield train_rows
        return
    shuffled = train_rows[torch.randperm(len(train_rows), generator=generator)]
    yield from torch.split(shuffled, batch_size)


def _validate(network: nn.Module, kind: ModelKind, x: Tensor, edge_index, edge_vectors, y: Tensor,
              val_rows: Tensor, threshold: float):
    network.eval()
    with torch.no_grad():
        logits = network(x, edge_index, edge_vectors)[val_rows] if kind.uses_graph else network(x[val_rows])
        val_loss = float(F.binary_cross_entropy_with_logits(logits, y[val_rows]))
    predicted = (torch.sigmoid(logits) >= threshold).long().numpy()
    val_f1 = float(f1_score(y[val_rows].long().numpy(), predicted, zero_division=0))
    return val_loss, val_f1
