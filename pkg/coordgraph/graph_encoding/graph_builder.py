import logging
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import pandas as pd

from coordgraph import file_utils
from coordgraph.model.censored_graph import CensoredGraph
from coordgraph.model.courl_map import NUM_BINS, CoUrlMap
from coordgraph.model.graph_build_config import GraphBuildConfig

log = logging.getLogger(__name__)


def build_censored_graph(courl_map: CoUrlMap, config: GraphBuildConfig,
                         account_ids: Optional[Sequence[str]] = None) -> CensoredGraph:
    """
    A_ij = 1 iff the pair has at least n co-URLs in bins 1..T-1 (1..T when inclusive_T).

    Nodes are the given accounts in order, or every account of the map when omitted.
    Pairs touching accounts outside the node set are ignored.
    """
    if not courl_map.is_symmetric:
        raise ValueError("Censored graph must be built from the symmetrized co-URL map.")

    if account_ids is None:
        account_ids = sorted(set(courl_map.account_i) | set(courl_map.account_j))
    account_ids = list(account_ids)
    index = {account_id: k for k, account_id in enumerate(account_ids)}

    early_mass = courl_map.counts[:, :config.last_bin].sum(axis=1) if len(courl_map) else np.zeros(0)
    strong = early_mass >= config.n
    edges = [(index[i], index[j]) for i, j, keep in zip(courl_map.account_i, courl_map.account_j, strong)
             if keep and i in index and j in index and index[i] < index[j]]
    graph = CensoredGraph.from_edges(account_ids, edges)

    isolated = int((graph.degrees == 0).sum())
    log.info("Censored co-URL graph built (n=%d, T=%d, inclusive=%s):", config.n, config.T, config.inclusive_T)
    log.info("|-Nodes: %d", graph.num_nodes)
    log.info("|-Edges: %d", graph.num_edges)
    log.info("|-Isolated nodes: %d", isolated)
    if graph.num_nodes and graph.num_edges == 0:
        log.warning("Censored graph has no edges; graph features degenerate to zeros.")
    return graph


def edge_vectors(courl_map: CoUrlMap, graph: CensoredGraph) -> np.ndarray:
    """
    Symmetrized co-URL vector of every directed edge, row-aligned to graph.edge_index().
    """
    edge_index = graph.edge_index()
    lookup = {(i, j): p for p, (i, j) in enumerate(zip(courl_map.account_i, courl_map.account_j))}
    vectors = np.zeros((edge_index.shape[1], NUM_BINS), dtype=np.float64)
    for e, (source, target) in enumerate(edge_index.T):
        p = lookup.get((graph.account_ids[source], graph.account_ids[target]))
        if p is None:
            raise ValueError(f"Edge {graph.account_ids[source]} - {graph.account_ids[target]} has no co-URL vector")
        vectors[e] = courl_map.counts[p]
    return vectors


def write_edge_list(graph: CensoredGraph, path: Path) -> None:
    edge_index = graph.edge_index()
    upper = edge_index[0] < edge_index[1]
    frame = pd.DataFrame({
        "i": np.asarray(graph.account_ids, dtype=object)[edge_index[0][upper]],
        "j": np.asarray(graph.account_ids, dtype=object)[edge_index[1][upper]],
    })
    file_utils.write_csv_atomically(path, frame)
