from coordgraph.ingest.inclusion_rule import InclusionRule
from coordgraph.model.account_statistics import AccountStatistics
from coordgraph.model.inclusion_criteria import InclusionCriteria


class ActivitySpanRule(InclusionRule):
    name = "active_days"

    def is_satisfied(self, stats: AccountStatistics, criteria: InclusionCriteria) -> bool:
        """
        Requires last_active - first_active to cover the minimum number of days.
        """
        return stats.active_days >= criteria.min_active_days
