from pydantic import BaseModel


class AccountStatistics(BaseModel):
    account_id: str
    active_days: float
    tweets: int
    url_shares: int
    unique_domains: int
    courls: int
    neighbors: int
