import logging
from pathlib import Path

import numpy as np
import pandas as pd

from coordgraph import file_utils
from coordgraph.coordination.courl_builder import fold_triples
from coordgraph.exceptions import CorpusError
from coordgraph.model.courl_map import NUM_BINS, CoUrlMap

log = logging.getLogger(__name__)

COURL_COLUMNS = ["account_i", "account_j", "tau", "count"]


def courl_frame(courl_map: CoUrlMap) -> pd.DataFrame:
    """
    Sparse long format: one row per non-zero (pair, tau) bin.
    """
    pair_index, bin_index = np.nonzero(courl_map.counts)
    return pd.DataFrame({
        "account_i": courl_map.account_i[pair_index],
        "account_j": courl_map.account_j[pair_index],
        "tau": bin_index + 1,
        "count": courl_map.counts[pair_index, bin_index],
    }, columns=COURL_COLUMNS)


def write_courl_csv(courl_map: CoUrlMap, path: Path) -> None:
    file_utils.write_csv_atomically(path, courl_frame(courl_map))
    log.debug("Co-URL map written: %s (%d pairs)", path, len(courl_map))


def read_courl_csv(path: Path, is_symmetric: bool = True) -> CoUrlMap:
    frame = file_utils.read_csv(path, dtype={"account_i": str, "account_j": str}, keep_default_na=False)
    missing = [c for c in COURL_COLUMNS if c not in frame.columns]
    if missing:
        raise CorpusError(f"Co-URL file {path} is missing columns: {missing}")
    if frame.empty:
        return CoUrlMap.empty(is_symmetric=is_symmetric)
    if not frame["tau"].between(1, NUM_BINS).all():
        raise CorpusError(f"Co-URL file {path} has tau outside 1..{NUM_BINS}")
    return fold_triples(frame[COURL_COLUMNS], is_symmetric=is_symmetric)
