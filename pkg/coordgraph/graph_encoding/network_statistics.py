import logging
from typing import Tuple

import networkx as nx
import numpy as np

from coordgraph.model.censored_graph import CensoredGraph
from coordgraph.model.encoding_flags import NETWORK_FEATURES_DIM

log = logging.getLogger(__name__)

PAGERANK_DAMPING = 0.85
PAGERANK_TOLERANCE = 1e-12
HITS_TOLERANCE = 1e-12
HITS_MAX_ITERATIONS = 10000


def to_networkx(graph: CensoredGraph) -> nx.Graph:
    nx_graph = nx.Graph()
    nx_graph.add_nodes_from(range(graph.num_nodes))
    edge_index = graph.edge_index()
    upper = edge_index[0] < edge_index[1]
    nx_graph.add_edges_from(zip(edge_index[0][upper].tolist(), edge_index[1][upper].tolist()))
    return nx_graph


def hits_scores(graph: CensoredGraph) -> Tuple[np.ndarray, np.ndarray]:
    """
    HITS by power iteration, authorities on A^T A and hubs on A A^T, L1-normalized.
    For the symmetric adjacency both operators are the same integer matrix, so the
    two score vectors are identical.
    """
    size = graph.num_nodes
    if graph.num_edges == 0:
        return np.zeros(size), np.zeros(size)

    adjacency = graph.adjacency.astype(np.float64)
    authorities = _power_iteration(_canonical(adjacency.T @ adjacency), size)
    hubs = _power_iteration(_canonical(adjacency @ adjacency.T), size)
    return hubs, authorities


def network_features(graph: CensoredGraph) -> np.ndarray:
    """
    Columns: degree, clustering coefficient, betweenness normalized by (N-1)(N-2)/2,
    pagerank (damping 0.85) and HITS authority.
    """
    size = graph.num_nodes
    features = np.zeros((size, NETWORK_FEATURES_DIM), dtype=np.float64)
    if size == 0:
        return features

    nx_graph = to_networkx(graph)
    clustering = nx.clustering(nx_graph)
    betweenness = nx.betweenness_centrality(nx_graph, normalized=True)
    pagerank = nx.pagerank(nx_graph, alpha=PAGERANK_DAMPING, tol=PAGERANK_TOLERANCE, max_iter=10000)
    _, authorities = hits_scores(graph)

    features[:, 0] = graph.degrees
    features[:, 1] = [clustering[v] for v in range(size)]
    features[:, 2] = [betweenness[v] for v in range(size)]
    features[:, 3] = [pagerank[v] for v in range(size)]
    features[:, 4] = authorities
    return features


def _canonical(matrix):
    # Same entries in the same order, so matrix-vector products round identically.
    matrix = matrix.tocsr()
    matrix.sum_duplicates()
    matrix.eliminate_zeros()
    matrix.sort_indices()
    return matrix


def _power_iteration(operator, size: int) -> np.ndarray:
    scores = np.full(size, 1.0 / size)
    for _ in range(HITS_MAX_ITERATIONS):
        updated = operator @ scores
        total = updated.sum()
        if total == 0:
            return np.zeros(size)
        updated /= total
        if np.abs(updated - scores).sum() < HITS_TOLERANCE:
            return updated
        scores = updated
    log.warning("HITS power iteration did not converge within %d iterations.", HITS_MAX_ITERATIONS)
    return scores
