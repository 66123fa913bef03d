from __future__ import annotations

from typing import Dict, List

import numpy as np
import scipy.sparse as sp
from pydantic import BaseModel, ConfigDict, model_validator


class CensoredGraph(BaseModel):
    """
    Undirected 0/1 co-sharing graph over a fixed node index (account_ids[k] is node k).
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    account_ids: List[str]
    adjacency: sp.csr_matrix

    @model_validator(mode="after")
    def _check_adjacency(self) -> CensoredGraph:
        size = len(self.account_ids)
        if self.adjacency.shape != (size, size):
            raise ValueError(f"Adjacency shape {self.adjacency.shape} does not match {size} nodes")
        if size and self.adjacency.diagonal().any():
            raise ValueError("Censored graph must not contain self loops")
        if (self.adjacency != self.adjacency.T).nnz:
            raise ValueError("Censored graph adjacency must be symmetric")
        return self

    @property
    def num_nodes(self) -> int:
        return len(self.account_ids)

    @property
    def num_edges(self) -> int:
        return int(self.adjacency.nnz // 2)

    @property
    def degrees(self) -> np.ndarray:
        return np.asarray(self.adjacency.sum(axis=1)).ravel().astype(np.int64)

    @property
    def index(self) -> Dict[str, int]:
        return {account_id: k for k, account_id in enumerate(self.account_ids)}

    def edge_index(self) -> np.ndarray:
        """
        Both directions of every edge as a 2 x 2E array sorted by (source, target).
        """
        coo = self.adjacency.tocoo()
        order = np.lexsort((coo.col, coo.row))
        return np.vstack([coo.row[order], coo.col[order]]).astype(np.int64)

    @classmethod
    def from_edges(cls, account_ids: List[str], edges) -> CensoredGraph:
        size = len(account_ids)
        edges = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        rows = np.concatenate([edges[:, 0], edges[:, 1]])
        cols = np.concatenate([edges[:, 1], edges[:, 0]])
        adjacency = sp.coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(size, size)).tocsr()
        adjacency.data[:] = 1
        adjacency.sort_indices()
        return cls(account_ids=list(account_ids), adjacency=adjacency)
