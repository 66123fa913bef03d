from coordgraph.ingest.inclusion_rule import InclusionRule
from coordgraph.model.account_statistics import AccountStatistics
from coordgraph.model.inclusion_criteria import InclusionCriteria


class CoordinationRule(InclusionRule):
    name = "courls"

    def is_satisfied(self, stats: AccountStatistics, criteria: InclusionCriteria) -> bool:
        """
        Requires both enough co-URLs and enough distinct co-sharing neighbors.
        """
        return stats.courls >= criteria.min_courls and stats.neighbors >= criteria.min_neighbors
