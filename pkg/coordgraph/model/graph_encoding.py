from typing import Dict, List

import numpy as np
from pydantic import BaseModel, ConfigDict

from coordgraph.model.encoding_flags import EncodingFlags


class GraphEncoding(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    account_ids: List[str]
    flags: EncodingFlags
    matrix: np.ndarray
    column_names: List[str]
    # Slice of matrix columns per enabled block, in block order.
    block_columns: Dict[str, List[int]]
