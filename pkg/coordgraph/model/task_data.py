from typing import Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from coordgraph.model.censored_graph import CensoredGraph
from coordgraph.model.corpus import Corpus


class TaskData(BaseModel):
    """
    Everything of one (task, seed) pair that does not depend on the censor settings:
    the split corpus, the censored graph over the task's accounts and its feature blocks.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    task: str
    seed: int
    corpus: Corpus
    account_ids: List[str]
    labels: np.ndarray
    train_rows: np.ndarray
    val_rows: np.ndarray
    test_rows: np.ndarray
    graph: CensoredGraph
    blocks: Dict[str, np.ndarray]
    edge_vectors: Optional[np.ndarray] = None
