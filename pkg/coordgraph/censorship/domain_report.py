import logging
from typing import Iterable

import numpy as np
import pandas as pd
from sklearn.feature_extraction.text import TfidfTransformer

from coordgraph.model.corpus import Corpus

log = logging.getLogger(__name__)

UNCOMMON_ROW = "UNCOMMON"
REPORT_COLUMNS = ["campaign", "rank", "domain", "count", "tfidf", "censored"]


def domain_report(corpus: Corpus, censored: Iterable[str], top_n: int = 20) -> pd.DataFrame:
    """
    Most shared domains per campaign with absolute counts and tf-idf scores, where
    each campaign is one document. Shares outside the top_n are folded into a
    trailing UNCOMMON row. Descriptive only; selection never uses tf-idf.
    """
    censored = set(censored)
    events = corpus.events.loc[corpus.events["domain"] != ""]
    campaign_of = dict(zip(corpus.accounts["account_id"], corpus.accounts["campaign"]))
    counts = (events.assign(campaign=events["account_id"].map(campaign_of))
              .groupby(["campaign", "domain"]).size()
              .unstack(fill_value=0)
              .sort_index(axis=0).sort_index(axis=1))
    if counts.empty:
        return pd.DataFrame(columns=REPORT_COLUMNS)

    tfidf = TfidfTransformer(norm="l2", smooth_idf=True).fit_transform(counts.to_numpy()).toarray()

    rows = []
    for c, campaign in enumerate(counts.index):
        row_counts = counts.iloc[c]
        order = sorted((-int(n), domain) for domain, n in row_counts.items() if n > 0)
        for rank, (negative_count, domain) in enumerate(order[:top_n], start=1):
            rows.append({"campaign": campaign, "rank": rank, "domain": domain, "count": -negative_count,
                         "tfidf": float(tfidf[c, counts.columns.get_loc(domain)]),
                         "censored": domain in censored})
        remainder = sum(-n for n, _ in order[top_n:])
        rows.append({"campaign": campaign, "rank": len(order[:top_n]) + 1, "domain": UNCOMMON_ROW,
                     "count": remainder, "tfidf": np.nan, "censored": False})

    log.debug("Domain report built for %d campaigns.", len(counts.index))
    return pd.DataFrame(rows, columns=REPORT_COLUMNS)
