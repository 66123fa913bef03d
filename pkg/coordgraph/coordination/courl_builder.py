import logging

import numpy as np
import pandas as pd

from coordgraph.model.corpus import Corpus
from coordgraph.model.courl_map import BIN_SECONDS, NUM_BINS, WINDOW_SECONDS, CoUrlMap

log = logging.getLogger(__name__)


def compute_courls(corpus: Corpus, window_minutes: int = NUM_BINS) -> CoUrlMap:
    """
    Builds the directed leader -> lagger co-URL histograms.

    Every pair of shares of one exact url by two distinct accounts with interarrival
    t <= window contributes one count to bin max(1, ceil(t / 60 s)). The earlier share
    leads; identical timestamps are led by the lexicographically smaller account.
    """
    if not 1 <= window_minutes <= NUM_BINS:
        raise ValueError(f"Co-URL window must be within 1..{NUM_BINS} minutes, got {window_minutes}")
    window_seconds = min(window_minutes * BIN_SECONDS, WINDOW_SECONDS)

    events = (corpus.events[["url", "timestamp", "account_id"]]
              .sort_values(["url", "timestamp", "account_id"], kind="mergesort")
              .reset_index(drop=True))
    if events.empty:
        return CoUrlMap.empty()

    url_codes = pd.factorize(events["url"])[0]
    timestamps = events["timestamp"].to_numpy(dtype=np.int64)
    accounts = events["account_id"].to_numpy(dtype=object)

    leaders, laggers, bins = [], [], []
    lag = 1
    while lag < len(events):
        first = np.arange(len(events) - lag)
        second = first + lag
        delta = timestamps[second] - timestamps[first]
        in_window = (url_codes[first] == url_codes[second]) & (delta <= window_seconds)
        # Sorted by timestamp inside a url, so no pair at a larger lag can be in window.
        if not in_window.any():
            break

        first, second, delta = first[in_window], second[in_window], delta[in_window]
        distinct = accounts[first] != accounts[second]
        first, second, delta = first[distinct], second[distinct], delta[distinct]

        # Equal timestamps were sorted by account id, so the first row already leads.
        leaders.append(accounts[first])
        laggers.append(accounts[second])
        bins.append(np.maximum(1, -(-delta // BIN_SECONDS)))
        lag += 1

    if not leaders or not sum(len(b) for b in bins):
        log.info("No co-URLs found within %d minutes.", window_minutes)
        return CoUrlMap.empty()

    triples = pd.DataFrame({
        "account_i": np.concatenate(leaders),
        "account_j": np.concatenate(laggers),
        "tau": np.concatenate(bins),
    })
    courl_map = fold_triples(triples, is_symmetric=False)

    log.info("Computed co-URL histograms:")
    log.info("|-Directed pairs: %d", len(courl_map))
    log.info("|-Total co-URLs: %d", courl_map.total_mass())
    return courl_map


def symmetrize(courl_map: CoUrlMap) -> CoUrlMap:
    """
    Returns the undirected map e_ij <- e_ij + e_ji. A map may be symmetrized only once.
    """
    if courl_map.is_symmetric:
        raise ValueError("Co-URL map is already symmetric; symmetrizing again would double every count.")
    if not len(courl_map):
        return CoUrlMap.empty(is_symmetric=True)

    account_ids, codes = np.unique(np.concatenate([courl_map.account_i, courl_map.account_j]).astype(str),
                                   return_inverse=True)
    code_i, code_j = np.split(codes, 2)
    size = len(account_ids)

    keys = np.concatenate([code_i * size + code_j, code_j * size + code_i])
    unique_keys, slot = np.unique(keys, return_inverse=True)
    counts = np.zeros((len(unique_keys), NUM_BINS), dtype=np.int64)
    np.add.at(counts, slot, np.concatenate([courl_map.counts, courl_map.counts]))

    return CoUrlMap(account_i=account_ids[unique_keys // size].astype(object),
                    account_j=account_ids[unique_keys % size].astype(object),
                    counts=counts, is_symmetric=True)


def fold_triples(triples: pd.DataFrame, is_symmetric: bool) -> CoUrlMap:
    """
    Folds (account_i, account_j, tau[, count]) rows into a sorted CoUrlMap.
    """
    if "count" not in triples.columns:
        triples = triples.assign(count=1)
    grouped = triples.groupby(["account_i", "account_j"], sort=True)
    pair_index = grouped.ngroup().to_numpy()
    pairs = grouped.size().index

    counts = np.zeros((len(pairs), NUM_BINS), dtype=np.int64)
    np.add.at(counts, (pair_index, triples["tau"].to_numpy(dtype=np.int64) - 1),
              triples["count"].to_numpy(dtype=np.int64))

    return CoUrlMap(account_i=pairs.get_level_values(0).to_numpy(dtype=object),
                    account_j=pairs.get_level_values(1).to_numpy(dtype=object),
                    counts=counts, is_symmetric=is_symmetric)
