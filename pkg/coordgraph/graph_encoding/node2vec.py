import logging
import zlib
from typing import Dict, List, Tuple

import numpy as np
from gensim.models import Word2Vec

from coordgraph.model.censored_graph import CensoredGraph
from coordgraph.model.encoding_flags import NODE2VEC_DIM
from coordgraph.model.node2vec_config import Node2VecConfig

log = logging.getLogger(__name__)

AliasTable = Tuple[np.ndarray, np.ndarray]


def stable_hash(token: str) -> int:
    # Replaces the salted builtin hash gensim uses to seed word vectors.
    return zlib.crc32(token.encode("utf-8"))


def alias_setup(probs: np.ndarray) -> AliasTable:
    """
    Alias tables for O(1) sampling from a discrete distribution.
    """
    size = len(probs)
    scaled = np.asarray(probs, dtype=np.float64) * size
    alias = np.zeros(size, dtype=np.int64)

    smaller = [k for k in range(size) if scaled[k] < 1.0]
    larger = [k for k in range(size) if scaled[k] >= 1.0]
    while smaller and larger:
        small = smaller.pop()
        large = larger.pop()
        alias[small] = large
        scaled[large] = scaled[large] + scaled[small] - 1.0
        if scaled[large] < 1.0:
            smaller.append(large)
        else:
            larger.append(large)
    for k in smaller + larger:
        scaled[k] = 1.0
    return alias, scaled


def alias_draw(table: AliasTable, rng: np.random.Generator) -> int:
    alias, threshold = table
    k = int(rng.integers(len(alias)))
    return k if rng.random() < threshold[k] else int(alias[k])


class BiasedWalker:
    """
    Second-order walks with return parameter p and in-out parameter q. With p = q = 1
    the walk is uniform over neighbors and no edge tables are built.
    """

    def __init__(self, graph: CensoredGraph, config: Node2VecConfig, rng: np.random.Generator):
        self.config = config
        self.rng = rng
        adjacency = graph.adjacency
        self.neighbors: List[np.ndarray] = [adjacency.indices[adjacency.indptr[v]:adjacency.indptr[v + 1]]
                                            for v in range(graph.num_nodes)]
        self.neighbor_sets = [set(n.tolist()) for n in self.neighbors]
        self.uniform = config.p == 1.0 and config.q == 1.0
        self.edge_tables: Dict[Tuple[int, int], AliasTable] = {}

    def _edge_table(self, previous: int, current: int) -> AliasTable:
        key = (previous, current)
        if key not in self.edge_tables:
            weights = np.array([1.0 / self.config.p if x == previous
                                else 1.0 if x in self.neighbor_sets[previous]
                                else 1.0 / self.config.q
                                for x in self.neighbors[current]])
            self.edge_tables[key] = alias_setup(weights / weights.sum())
        return self.edge_tables[key]

    def walk(self, start: int) -> List[int]:
        walk = [start]
        while len(walk) < self.config.walk_length:
            current = walk[-1]
            candidates = self.neighbors[current]
            if len(candidates) == 0:
                break
            if len(walk) == 1 or self.uniform:
                walk.append(int(candidates[self.rng.integers(len(candidates))]))
            else:
                walk.append(int(candidates[alias_draw(self._edge_table(walk[-2], current), self.rng)]))
        return walk

    def simulate(self, nodes: List[int]) -> List[List[int]]:
        walks = []
        for _ in range(self.config.walks_per_node):
            order = list(nodes)
            self.rng.shuffle(order)
            walks.extend(self.walk(node) for node in order)
        return walks


def node2vec_embed(graph: CensoredGraph, config: Node2VecConfig, seed: int,
                   dim: int = NODE2VEC_DIM, workers: int = 1) -> np.ndarray:
    """
    Skip-gram embedding of biased random walks. Nodes without edges get zero vectors.
    Deterministic for a fixed seed when workers = 1.
    """
    embedding = np.zeros((graph.num_nodes, dim), dtype=np.float64)
    if graph.num_edges == 0:
        log.warning("node2vec skipped: graph has no edges, block set to zeros.")
        return embedding

    connected = [v for v in range(graph.num_nodes) if graph.degrees[v] > 0]
    walker = BiasedWalker(graph, config, np.random.default_rng(seed))
    walks = [[str(v) for v in walk] for walk in walker.simulate(connected)]

    model = Word2Vec(
            sentences=walks,
            vector_size=dim,
            window=config.window,
            min_count=0,
            sg=1,
            negative=config.negative,
            epochs=config.epochs,
            workers=workers,
            seed=seed,
            hashfxn=stable_hash,
    )
    for v in connected:
        embedding[v] = model.wv[str(v)]

    log.debug("node2vec: %d walks over %d connected nodes.", len(walks), len(connected))
    return embedding
