from pydantic import BaseModel, Field


# "At least" semantics: every threshold is inclusive.
class InclusionCriteria(BaseModel):
    min_active_days: float = Field(default=90, ge=0)
    min_tweets: int = Field(default=300, ge=0)
    min_url_shares: int = Field(default=200, ge=0)
    min_unique_domains: int = Field(default=5, ge=0)
    min_courls: int = Field(default=10, ge=0)
    min_neighbors: int = Field(default=2, ge=0)
