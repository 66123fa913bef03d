import logging
from typing import Dict, Optional, Sequence

import numpy as np
import pandas as pd

from coordgraph.exceptions import LayoutMismatchError
from coordgraph.graph_encoding.network_statistics import network_features
from coordgraph.graph_encoding.node2vec import node2vec_embed
from coordgraph.graph_encoding.spectral import laplacian_eigenmaps, rwpe
from coordgraph.model.censored_graph import CensoredGraph
from coordgraph.model.encoding_flags import BLOCK_DIMS, BLOCK_ORDER, NETWORK_FEATURE_NAMES, EncodingFlags
from coordgraph.model.graph_encoding import GraphEncoding
from coordgraph.model.node2vec_config import Node2VecConfig

log = logging.getLogger(__name__)


def compute_blocks(graph: CensoredGraph, node2vec_config: Node2VecConfig, seed: int,
                   blocks: Sequence[str] = tuple(BLOCK_ORDER), workers: int = 1) -> Dict[str, np.ndarray]:
    """
    Computes the requested graph feature blocks once so several flag combinations
    can be assembled from the same cache.
    """
    computed: Dict[str, np.ndarray] = {}
    for name in blocks:
        if name == "node2vec":
            computed[name] = node2vec_embed(graph, node2vec_config, seed, workers=workers)
        elif name == "laplacian":
            computed[name] = laplacian_eigenmaps(graph)
        elif name == "rwpe":
            computed[name] = rwpe(graph)
        elif name == "network_features":
            computed[name] = network_features(graph)
        else:
            raise ValueError(f"Unknown graph encoding block: {name}")
        log.debug("Graph block %s computed: %s", name, computed[name].shape)
    return computed


def block_column_names(name: str) -> list[str]:
    if name == "network_features":
        return [f"nf:{feature}" for feature in NETWORK_FEATURE_NAMES]
    if name == "rwpe":
        return [f"rwpe:{k}" for k in range(1, BLOCK_DIMS[name] + 1)]
    return [f"{name}:{k}" for k in range(BLOCK_DIMS[name])]


def assemble_encoding(account_ids: Sequence[str], blocks: Dict[str, np.ndarray], flags: EncodingFlags,
                      train_rows: Optional[Sequence[int]] = None) -> GraphEncoding:
    """
    Concatenates the enabled blocks in fixed order. The network-feature block is
    z-scored with statistics of the train rows.
    """
    account_ids = list(account_ids)
    parts, names, block_columns = [], [], {}
    offset = 0
    for name in flags.enabled_blocks:
        if name not in blocks:
            raise LayoutMismatchError(f"Encoding flag {name} is set but the block was not computed.")
        block = np.asarray(blocks[name], dtype=np.float64)
        if block.shape != (len(account_ids), BLOCK_DIMS[name]):
            raise LayoutMismatchError(f"Block {name} has shape {block.shape}, "
                                      f"expected {(len(account_ids), BLOCK_DIMS[name])}")
        if name == "network_features":
            block = _standardize(block, train_rows)
        parts.append(block)
        names.extend(block_column_names(name))
        block_columns[name] = list(range(offset, offset + block.shape[1]))
        offset += block.shape[1]

    matrix = np.hstack(parts) if parts else np.zeros((len(account_ids), 0))
    return GraphEncoding(account_ids=account_ids, flags=flags, matrix=matrix, column_names=names,
                         block_columns=block_columns)


def encoding_frame(encoding: GraphEncoding) -> pd.DataFrame:
    frame = pd.DataFrame(encoding.matrix, columns=encoding.column_names)
    frame.insert(0, "account_id", encoding.account_ids)
    return frame


def _standardize(block: np.ndarray, train_rows: Optional[Sequence[int]]) -> np.ndarray:
    fit = block[list(train_rows)] if train_rows is not None and len(train_rows) else block
    mean = fit.mean(axis=0)
    std = fit.std(axis=0)
    std[std == 0] = 1.0
    return (block - mean) / std
