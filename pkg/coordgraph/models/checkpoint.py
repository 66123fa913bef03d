import io
import json
import logging
from pathlib import Path

import joblib
import pandas as pd
import torch

from coordgraph import file_utils
from coordgraph.exceptions import MissingArtifactError
from coordgraph.model.epoch_record import EpochRecord
from coordgraph.model.input_layout import InputLayout
from coordgraph.model.model_config import ModelConfig, ModelKind
from coordgraph.model.trained_model import TrainedModel
from coordgraph.models.networks import build_network

log = logging.getLogger(__name__)

DEEP_SUFFIX = ".pt"
CLASSICAL_SUFFIX = ".joblib"


def checkpoint_path(directory: Path, kind: ModelKind) -> Path:
    return Path(directory) / f"model_{kind.value}{DEEP_SUFFIX if kind.is_deep else CLASSICAL_SUFFIX}"


def save_model(model: TrainedModel, path: Path) -> None:
    """
    Deep models: a torch archive of the state dict plus JSON-encoded layout and config,
    loadable with weights_only. Classical models: a joblib archive of the estimator.
    """
    payload = {
        "kind": model.kind.value,
        "layout": model.layout.model_dump_json(),
        "config": model.config.model_dump_json(),
        "seed": model.seed,
        "training_log": [record.model_dump() for record in model.training_log],
        "first_batch_loss": model.first_batch_loss,
        "selected_hyperparameters": json.dumps(model.selected_hyperparameters),
        "best_val_f1": model.best_val_f1,
    }
    buffer = io.BytesIO()
    if model.kind.is_deep:
        payload["state_dict"] = model.estimator.state_dict()
        torch.save(payload, buffer)
    else:
        payload["estimator"] = model.estimator
        joblib.dump(payload, buffer)
    file_utils.write_bytes_atomically(Path(path), buffer.getvalue())
    log.debug("Model checkpoint saved: %s", path)


def load_model(path: Path) -> TrainedModel:
    path = Path(path)
    if not file_utils.check_file_exists(path):
        raise MissingArtifactError("model checkpoint", path)

    buffer = io.BytesIO(file_utils.read_bytes(path))
    if path.suffix == DEEP_SUFFIX:
        payload = torch.load(buffer, weights_only=True)
    else:
        payload = joblib.load(buffer)

    kind = ModelKind(payload["kind"])
    layout = InputLayout.model_validate_json(payload["layout"])
    config = ModelConfig.model_validate_json(payload["config"])
    if kind.is_deep:
        state_dict = payload["state_dict"]
        estimator = build_network(kind, layout.width, config)
        estimator = estimator.to(next(iter(state_dict.values())).dtype)
        estimator.load_state_dict(state_dict)
        estimator.eval()
    else:
        estimator = payload["estimator"]

    return TrainedModel(kind=kind, layout=layout, config=config, seed=payload["seed"], estimator=estimator,
                        training_log=[EpochRecord(**record) for record in payload["training_log"]],
                        first_batch_loss=payload["first_batch_loss"],
                        selected_hyperparameters=json.loads(payload["selected_hyperparameters"]),
                        best_val_f1=payload["best_val_f1"])


def training_log_frame(model: TrainedModel) -> pd.DataFrame:
    return pd.DataFrame([record.model_dump() for record in model.training_log],
                        columns=["epoch", "loss", "val_loss", "val_f1"])


def write_training_log(model: TrainedModel, path: Path) -> None:
    file_utils.write_csv_atomically(Path(path), training_log_frame(model))
