from coordgraph.ingest.inclusion_rule import InclusionRule
from coordgraph.model.account_statistics import AccountStatistics
from coordgraph.model.inclusion_criteria import InclusionCriteria


class UrlShareRule(InclusionRule):
    name = "url_shares"

    def is_satisfied(self, stats: AccountStatistics, criteria: InclusionCriteria) -> bool:
        """
        Counts only shares whose url yields a registered domain.
        """
        return stats.url_shares >= criteria.min_url_shares
