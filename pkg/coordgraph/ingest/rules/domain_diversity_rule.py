from coordgraph.ingest.inclusion_rule import InclusionRule
from coordgraph.model.account_statistics import AccountStatistics
from coordgraph.model.inclusion_criteria import InclusionCriteria


class DomainDiversityRule(InclusionRule):
    name = "unique_domains"

    def is_satisfied(self, stats: AccountStatistics, criteria: InclusionCriteria) -> bool:
        return stats.unique_domains >= criteria.min_unique_domains
