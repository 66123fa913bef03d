from abc import ABC, abstractmethod

from coordgraph.model.account_statistics import AccountStatistics
from coordgraph.model.inclusion_criteria import InclusionCriteria


class InclusionRule(ABC):
    name: str = "rule"

    @abstractmethod
    def is_satisfied(self, stats: AccountStatistics, criteria: InclusionCriteria) -> bool:
        """
        Returns True when the account passes this criterion.

        :param stats: Per-account quantities computed over the whole corpus.
        :param criteria: Inclusive thresholds.
        """
        pass
