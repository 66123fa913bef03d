from typing import List, Optional

import numpy as np

from coordgraph.exceptions import LayoutMismatchError
from coordgraph.model.censored_feature_set import CensoredFeatureSet
from coordgraph.model.censored_graph import CensoredGraph
from coordgraph.model.encoding_flags import EncodingFlags
from coordgraph.model.graph_encoding import GraphEncoding
from coordgraph.model.input_layout import InputLayout
from coordgraph.model.model_inputs import ModelInputs

DOMAIN_PREFIX = "domain:"


def content_column_names(retained_domains: List[str]) -> List[str]:
    return [f"{DOMAIN_PREFIX}{domain}" for domain in retained_domains]


def assemble_inputs(content: CensoredFeatureSet, labels: np.ndarray, encoding: Optional[GraphEncoding] = None,
                    graph: Optional[CensoredGraph] = None,
                    edge_vectors: Optional[np.ndarray] = None) -> ModelInputs:
    """
    Concatenates content features and the graph encoding row by row. Every part must
    use the same account order.
    """
    account_ids = list(content.account_ids)
    for name, part in (("graph encoding", encoding), ("censored graph", graph)):
        if part is not None and list(part.account_ids) != account_ids:
            raise LayoutMismatchError(f"The {name} is not row-aligned with the content features")

    flags = encoding.flags if encoding is not None else EncodingFlags(node2vec=False, laplacian=False, rwpe=False,
                                                                      network_features=False)
    columns = content_column_names(content.retained_domains)
    features = np.asarray(content.features, dtype=np.float64)
    if encoding is not None:
        columns += encoding.column_names
        features = np.hstack([features, encoding.matrix])

    layout = InputLayout(retained_domains=list(content.retained_domains), flags=flags, column_names=columns)
    return ModelInputs(account_ids=account_ids, features=features, labels=np.asarray(labels, dtype=np.int64),
                       layout=layout, edge_index=graph.edge_index() if graph is not None else None,
                       edge_vectors=edge_vectors)
