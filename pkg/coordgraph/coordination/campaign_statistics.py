import logging
from enum import Enum
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd

from coordgraph.exceptions import DegenerateDataError
from coordgraph.ingest.splits import campaign_wave
from coordgraph.model.campaign_matrix import CampaignMatrix
from coordgraph.model.coordination_cdf import CoordinationCdf
from coordgraph.model.corpus import Corpus
from coordgraph.model.courl_map import NUM_BINS, CoUrlMap

log = logging.getLogger(__name__)

NORMALIZATIONS = ["product", "geometric"]


class CdfMetric(str, Enum):
    MAD = "MAD"
    KS = "KS"
    MSD = "MSD"


def intra_campaign_histogram(courl_map: CoUrlMap, members: Sequence[str]) -> np.ndarray:
    members = np.asarray(list(members), dtype=object)
    mask = np.isin(courl_map.account_i, members) & np.isin(courl_map.account_j, members)
    return courl_map.counts[mask].sum(axis=0).astype(np.int64) if mask.any() else np.zeros(NUM_BINS, np.int64)


def campaign_cdf(courl_map: CoUrlMap, corpus: Corpus, campaign: str) -> CoordinationCdf:
    """
    CDF over tau of co-URL counts between two accounts of the same campaign.
    """
    histogram = intra_campaign_histogram(courl_map, corpus.ids_in_campaign(campaign))
    total = int(histogram.sum())
    if total == 0:
        log.warning("Campaign %s has no intra-campaign co-URLs; CDF is degenerate.", campaign)
        return CoordinationCdf(campaign=campaign, values=[0.0] * NUM_BINS, total_count=0, degenerate=True)

    values = np.cumsum(histogram) / total
    values[-1] = 1.0
    return CoordinationCdf(campaign=campaign, values=values.tolist(), total_count=total)


def cdf_distance(cdf_a: CoordinationCdf, cdf_b: CoordinationCdf, metric: CdfMetric) -> float:
    for cdf in (cdf_a, cdf_b):
        if cdf.degenerate:
            raise DegenerateDataError(f"CDF of campaign {cdf.campaign} is degenerate (no co-URLs).")
    if len(cdf_a.values) != len(cdf_b.values):
        raise ValueError("CDFs must share the same support.")

    delta = np.asarray(cdf_a.values) - np.asarray(cdf_b.values)
    metric = CdfMetric(metric)
    if metric == CdfMetric.MAD:
        return float(np.mean(np.abs(delta)))
    if metric == CdfMetric.KS:
        return float(np.max(np.abs(delta)))
    return float(np.mean(delta ** 2))


def cdf_distance_matrix(cdfs: List[CoordinationCdf], metric: CdfMetric) -> pd.DataFrame:
    """
    All-pairs distance between campaign CDFs. Degenerate campaigns yield NaN rows.
    """
    names = [cdf.campaign for cdf in cdfs]
    matrix = pd.DataFrame(np.nan, index=names, columns=names)
    for a, cdf_a in enumerate(cdfs):
        for b, cdf_b in enumerate(cdfs):
            if cdf_a.degenerate or cdf_b.degenerate:
                continue
            matrix.iat[a, b] = 0.0 if a == b else cdf_distance(cdf_a, cdf_b, metric)
    return matrix


def cross_campaign_matrix(courl_map: CoUrlMap, corpus: Corpus, campaigns: Optional[List[str]] = None,
                          near_simultaneous_only: bool = False, normalization: str = "product") -> CampaignMatrix:
    """
    Co-URL counts with the leader in campaign A and the lagger in campaign B, divided by
    |A|*|B| (product) or sqrt(|A|*|B|) (geometric). Expects the directed map.
    """
    if normalization not in NORMALIZATIONS:
        raise ValueError(f"Unknown normalization {normalization!r}; expected one of {NORMALIZATIONS}")
    if courl_map.is_symmetric:
        log.warning("Cross-campaign matrix built from a symmetrized map; leader/lagger direction is lost.")

    campaigns = campaigns or corpus.campaigns
    campaign_of = dict(zip(corpus.accounts["account_id"], corpus.accounts["campaign"]))
    sizes = {c: len(corpus.ids_in_campaign(c)) for c in campaigns}
    index = {c: k for k, c in enumerate(campaigns)}

    mass = courl_map.counts[:, 0] if near_simultaneous_only else courl_map.counts.sum(axis=1)
    totals = np.zeros((len(campaigns), len(campaigns)))
    for account_i, account_j, count in zip(courl_map.account_i, courl_map.account_j, mass):
        a, b = index.get(campaign_of.get(account_i)), index.get(campaign_of.get(account_j))
        if a is not None and b is not None:
            totals[a, b] += count

    values, empty = [], []
    for a, campaign_a in enumerate(campaigns):
        row, empty_row = [], []
        for b, campaign_b in enumerate(campaigns):
            size = sizes[campaign_a] * sizes[campaign_b]
            if size == 0:
                row.append(0.0)
                empty_row.append(True)
                continue
            denominator = size if normalization == "product" else np.sqrt(size)
            row.append(float(totals[a, b] / denominator))
            empty_row.append(False)
        values.append(row)
        empty.append(empty_row)

    return CampaignMatrix(campaigns=list(campaigns), values=values, empty=empty,
                          near_simultaneous_only=near_simultaneous_only, normalization=normalization)


def campaign_courl_series(courl_map: CoUrlMap, corpus: Corpus) -> pd.DataFrame:
    """
    Intra-campaign co-URL counts per tau, tagged with the campaign's wave.
    """
    rows = []
    for campaign in corpus.campaigns:
        histogram = intra_campaign_histogram(courl_map, corpus.ids_in_campaign(campaign))
        wave = campaign_wave(campaign)
        rows.extend({"campaign": campaign, "wave": wave, "tau": tau, "count": int(count)}
                    for tau, count in enumerate(histogram, start=1))
    return pd.DataFrame(rows, columns=["campaign", "wave", "tau", "count"])
