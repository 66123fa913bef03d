import logging

import numpy as np
import scipy.sparse as sp
from scipy.linalg import eigh
from scipy.sparse.csgraph import connected_components, laplacian

from coordgraph.model.censored_graph import CensoredGraph
from coordgraph.model.encoding_flags import LAPLACIAN_DIM, RWPE_DIM

log = logging.getLogger(__name__)


def normalized_laplacian(graph: CensoredGraph) -> np.ndarray:
    """
    I - D^-1/2 A D^-1/2 with zero rows and columns for isolated nodes.
    """
    return laplacian(graph.adjacency.astype(np.float64), normed=True).toarray()


def normalized_adjacency(graph: CensoredGraph) -> np.ndarray:
    degrees = graph.degrees.astype(np.float64)
    inv_sqrt = np.zeros_like(degrees)
    inv_sqrt[degrees > 0] = 1.0 / np.sqrt(degrees[degrees > 0])
    scale = sp.diags(inv_sqrt)
    return (scale @ graph.adjacency.astype(np.float64) @ scale).toarray()


def laplacian_eigenmaps(graph: CensoredGraph, dim: int = LAPLACIAN_DIM) -> np.ndarray:
    """
    Eigenvectors of the normalized Laplacian for the dim smallest non-trivial
    eigenvalues, one zero eigenvalue skipped per connected component (isolated nodes
    included). Missing directions are zero-padded; every column's largest-magnitude
    entry is positive.
    """
    size = graph.num_nodes
    embedding = np.zeros((size, dim), dtype=np.float64)
    if size == 0:
        return embedding

    components, _ = connected_components(graph.adjacency, directed=False)
    eigenvalues, eigenvectors = eigh(normalized_laplacian(graph))
    vectors = eigenvectors[:, components:components + dim]

    pivots = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[pivots, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    embedding[:, :vectors.shape[1]] = vectors * signs

    if vectors.shape[1] < dim:
        log.debug("Laplacian eigenmaps: %d of %d directions available, rest padded with zeros.",
                  vectors.shape[1], dim)
    return embedding


def rwpe(graph: CensoredGraph, k_max: int = RWPE_DIM) -> np.ndarray:
    """
    Column k-1 holds [(D^-1 A)^k]_ii. Uses (D^-1 A)^k = D^-1/2 S^k D^1/2 with the
    symmetric S = D^-1/2 A D^-1/2, so the diagonal is sum_m U_im^2 lambda_m^k.
    """
    size = graph.num_nodes
    if size == 0 or graph.num_edges == 0:
        return np.zeros((size, k_max), dtype=np.float64)

    eigenvalues, eigenvectors = eigh(normalized_adjacency(graph))
    weights = eigenvectors ** 2
    powers = eigenvalues[:, None] ** np.arange(1, k_max + 1)[None, :]
    encoding = weights @ powers
    encoding[graph.degrees == 0] = 0.0
    return encoding
