from coordgraph.ingest.inclusion_rule import InclusionRule
from coordgraph.model.account_statistics import AccountStatistics
from coordgraph.model.inclusion_criteria import InclusionCriteria


class TweetCountRule(InclusionRule):
    name = "tweets"

    def is_satisfied(self, stats: AccountStatistics, criteria: InclusionCriteria) -> bool:
        return stats.tweets >= criteria.min_tweets
