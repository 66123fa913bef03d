from __future__ import annotations

from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from coordgraph.model.input_layout import InputLayout


class ModelInputs(BaseModel):
    """
    Row-aligned features and labels for one task, plus the censored graph
    (edge_index over row positions) and its co-URL edge vectors for graph models.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    account_ids: List[str]
    features: np.ndarray
    labels: np.ndarray
    layout: InputLayout
    edge_index: Optional[np.ndarray] = None
    edge_vectors: Optional[np.ndarray] = None

    @model_validator(mode="after")
    def _check_alignment(self) -> ModelInputs:
        rows = len(self.account_ids)
        if self.features.shape != (rows, self.layout.width):
            raise ValueError(f"Features {self.features.shape} do not match {rows} rows x {self.layout.width} columns")
        if self.labels.shape != (rows,):
            raise ValueError(f"Labels {self.labels.shape} do not match {rows} rows")
        if self.edge_index is not None and self.edge_vectors is not None \
                and self.edge_index.shape[1] != self.edge_vectors.shape[0]:
            raise ValueError("Edge vectors are not aligned with edge_index")
        return self

    def rows_of(self, account_ids: List[str]) -> np.ndarray:
        position = {a: k for k, a in enumerate(self.account_ids)}
        return np.array([position[a] for a in account_ids], dtype=np.int64)
