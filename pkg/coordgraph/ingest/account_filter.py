import logging
from typing import Dict, List

import numpy as np
import pandas as pd

from coordgraph.coordination.courl_builder import symmetrize
from coordgraph.ingest.inclusion_rule import InclusionRule
from coordgraph.ingest.rules.activity_span_rule import ActivitySpanRule
from coordgraph.ingest.rules.coordination_rule import CoordinationRule
from coordgraph.ingest.rules.domain_diversity_rule import DomainDiversityRule
from coordgraph.ingest.rules.tweet_count_rule import TweetCountRule
from coordgraph.ingest.rules.url_share_rule import UrlShareRule
from coordgraph.model.account_statistics import AccountStatistics
from coordgraph.model.corpus import Corpus
from coordgraph.model.courl_map import CoUrlMap
from coordgraph.model.inclusion_criteria import InclusionCriteria
from coordgraph.model.split_name import SplitName

log = logging.getLogger(__name__)

SECONDS_PER_DAY = 86400


def account_statistics(corpus: Corpus, courl_map: CoUrlMap) -> Dict[str, AccountStatistics]:
    """
    Per-account quantities tested by the inclusion rules. Co-URLs are counted on the
    undirected map, so each co-URL counts once for both of its accounts.
    """
    undirected = courl_map if courl_map.is_symmetric else symmetrize(courl_map)

    events = corpus.events
    with_domain = events.loc[events["domain"] != ""]
    tweets = events.groupby("account_id").size()
    url_shares = with_domain.groupby("account_id").size()
    unique_domains = with_domain.groupby("account_id")["domain"].nunique()

    pair_mass = undirected.counts.sum(axis=1)
    pairs = pd.DataFrame({"account_id": undirected.account_i, "mass": pair_mass})
    courls = pairs.groupby("account_id")["mass"].sum()
    neighbors = pairs.loc[pairs["mass"] > 0].groupby("account_id").size()

    accounts = corpus.accounts
    span_days = (accounts["last_active"] - accounts["first_active"]).to_numpy() / SECONDS_PER_DAY

    statistics = {}
    for account_id, active_days in zip(accounts["account_id"], span_days):
        statistics[account_id] = AccountStatistics(
                account_id=account_id,
                active_days=float(active_days),
                tweets=int(tweets.get(account_id, 0)),
                url_shares=int(url_shares.get(account_id, 0)),
                unique_domains=int(unique_domains.get(account_id, 0)),
                courls=int(courls.get(account_id, 0)),
                neighbors=int(neighbors.get(account_id, 0)),
        )
    return statistics


class AccountFilter:
    def __init__(self, rules: List[InclusionRule] = None):
        self.rules: List[InclusionRule] = rules if rules is not None else [
            ActivitySpanRule(),
            TweetCountRule(),
            UrlShareRule(),
            DomainDiversityRule(),
            CoordinationRule(),
        ]

    def filter_accounts(self, corpus: Corpus, criteria: InclusionCriteria,
                        statistics: Dict[str, AccountStatistics]) -> Corpus:
        """
        Marks accounts failing any rule as excluded. Statistics are fixed inputs, so
        applying the filter again excludes the same accounts.
        """
        failures = {rule.name: 0 for rule in self.rules}
        assignment = dict(corpus.split_assignment)

        for account_id in corpus.account_ids:
            stats = statistics.get(account_id)
            if stats is None:
                assignment[account_id] = SplitName.EXCLUDED
                continue
            failed = [rule.name for rule in self.rules if not rule.is_satisfied(stats, criteria)]
            for name in failed:
                failures[name] += 1
            if failed:
                assignment[account_id] = SplitName.EXCLUDED

        filtered = corpus.with_splits(assignment)
        retained = filtered.retained_ids
        labels = filtered.labels(retained)

        log.info("Inclusion criteria applied:")
        log.info("|-Accounts: %d", len(corpus))
        log.info("|-Retained: %d (%d IO, %d baseline)", len(retained), int(np.sum(labels)),
                 len(retained) - int(np.sum(labels)))
        for name, count in failures.items():
            log.info("|-Failing %s: %d", name, count)
        return filtered


def filter_accounts(corpus: Corpus, criteria: InclusionCriteria,
                    statistics: Dict[str, AccountStatistics]) -> Corpus:
    return AccountFilter().filter_accounts(corpus, criteria, statistics)
