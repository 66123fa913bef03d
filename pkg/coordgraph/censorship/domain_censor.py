import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from coordgraph.exceptions import DegenerateDataError
from coordgraph.model.censor_config import CensorConfig
from coordgraph.model.censored_feature_set import CensoredFeatureSet
from coordgraph.model.corpus import Corpus
from coordgraph.model.domain_frequency_table import DomainFrequencyTable
from coordgraph.model.split_name import SplitName

log = logging.getLogger(__name__)


def domain_frequency_table(corpus: Corpus, split: SplitName = SplitName.TRAIN) -> DomainFrequencyTable:
    """
    Class-conditional domain counts over the accounts of one split (train by default).
    """
    account_ids = corpus.ids_in_split(split)
    events = corpus.events.loc[corpus.events["account_id"].isin(account_ids) & (corpus.events["domain"] != "")]
    labels = events["account_id"].map(dict(zip(corpus.accounts["account_id"], corpus.accounts["label"])))

    counts_io = events.loc[labels == 1].groupby("domain").size().to_dict()
    counts_baseline = events.loc[labels == 0].groupby("domain").size().to_dict()
    return DomainFrequencyTable.from_counts(counts_io, counts_baseline)


def term_frequencies(table: DomainFrequencyTable) -> Tuple[np.ndarray, np.ndarray]:
    """
    tf(i, y) = f_i^(y) / sum_i f_i^(y) for y = 1 (IO) and y = 0 (baseline).
    """
    total_io = int(table.counts_io.sum())
    total_baseline = int(table.counts_baseline.sum())
    if total_io == 0 or total_baseline == 0:
        raise DegenerateDataError(f"Domain counts need both classes in the training split "
                                  f"(IO total {total_io}, baseline total {total_baseline}).")
    return table.counts_io / total_io, table.counts_baseline / total_baseline


def gamma_ratio(tf_io: np.ndarray, tf_baseline: np.ndarray) -> np.ndarray:
    """
    gamma_i = tf(i,1) / tf(i,0), with x/0 = inf for x > 0 and 0/0 = 0.
    """
    tf_io = np.asarray(tf_io, dtype=np.float64)
    tf_baseline = np.asarray(tf_baseline, dtype=np.float64)
    if tf_io.shape != tf_baseline.shape:
        raise ValueError("Term frequency vectors must be aligned")

    gamma = np.zeros_like(tf_io)
    present = tf_baseline > 0
    gamma[present] = tf_io[present] / tf_baseline[present]
    gamma[~present & (tf_io > 0)] = math.inf
    return gamma


def censor_and_select(table: DomainFrequencyTable, config: CensorConfig) -> List[str]:
    """
    Drops domains with gamma above gamma_max, then keeps the k_top most frequent
    survivors by training-split total count (ties broken by domain name).
    """
    gamma = gamma_ratio(*term_frequencies(table))
    survivors = gamma <= config.gamma_max
    if not survivors.any():
        raise DegenerateDataError(f"Every domain is censored with {config.describe()}; raise gamma_max.")

    ranked = sorted(((-int(total), domain) for domain, total, keep
                     in zip(table.domains, table.totals, survivors) if keep))
    vocabulary = [domain for _, domain in ranked[:config.k_top]]

    log.info("Content vocabulary selected (%s):", config.describe())
    log.info("|-Domains in training split: %d", len(table.domains))
    log.info("|-Censored: %d", int((~survivors).sum()))
    log.info("|-Retained: %d", len(vocabulary))
    return vocabulary


def vocabulary_frame(table: DomainFrequencyTable, config: CensorConfig) -> pd.DataFrame:
    """
    Export layout: domain,gamma,total_count,censored,selected, sorted by total count.
    Selected rows, in order, are the vocabulary censor_and_select returns.
    """
    gamma = gamma_ratio(*term_frequencies(table))
    frame = pd.DataFrame({
        "domain": table.domains,
        "gamma": gamma,
        "total_count": table.totals,
        "censored": gamma > config.gamma_max,
    })
    frame = frame.sort_values(["total_count", "domain"], ascending=[False, True], kind="mergesort") \
        .reset_index(drop=True)
    frame["selected"] = ~frame["censored"] & (frame["censored"].eq(False).cumsum() <= config.k_top)
    return frame


def vocabulary_from_frame(frame: pd.DataFrame) -> List[str]:
    return frame.loc[frame["selected"].astype(bool), "domain"].astype(str).tolist()


def build_content_features(corpus: Corpus, vocabulary: Sequence[str], standardize: bool = True,
                           account_ids: Optional[Sequence[str]] = None) -> CensoredFeatureSet:
    """
    Per-account share counts over the vocabulary. The z-score is fitted on the train
    split and applied to every row; constant columns keep unit scale.
    """
    vocabulary = list(vocabulary)
    if account_ids is None:
        account_ids = sorted(a for a, s in corpus.split_assignment.items() if s != SplitName.EXCLUDED) \
                      or corpus.account_ids
    account_ids = list(account_ids)

    events = corpus.events.loc[corpus.events["account_id"].isin(account_ids)
                               & corpus.events["domain"].isin(vocabulary)]
    if events.empty:
        raw = np.zeros((len(account_ids), len(vocabulary)), dtype=np.int64)
    else:
        raw = (events.groupby(["account_id", "domain"]).size()
               .unstack(fill_value=0)
               .reindex(index=account_ids, columns=vocabulary, fill_value=0)
               .to_numpy(dtype=np.int64))

    train_rows = [k for k, a in enumerate(account_ids) if corpus.split_assignment.get(a) == SplitName.TRAIN]
    if standardize and train_rows:
        fit = raw[train_rows].astype(np.float64)
        mean = fit.mean(axis=0)
        std = fit.std(axis=0)
        std[std == 0] = 1.0
    else:
        if standardize:
            log.warning("No training accounts among the featurized rows; content features left unscaled.")
        mean = np.zeros(len(vocabulary))
        std = np.ones(len(vocabulary))

    return CensoredFeatureSet(retained_domains=vocabulary, account_ids=account_ids, raw_counts=raw,
                              features=(raw - mean) / std, mean=mean, std=std)
