from __future__ import annotations

from typing import Dict, Iterable, List, Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from coordgraph.exceptions import CorpusError
from coordgraph.model.account_record import AccountRecord
from coordgraph.model.share_event import ShareEvent
from coordgraph.model.split_name import SplitName

EVENT_FRAME_COLUMNS = ["account_id", "timestamp", "url", "domain"]
ACCOUNT_FRAME_COLUMNS = ["account_id", "label", "campaign", "first_active", "last_active"]


class Corpus(BaseModel):
    """
    Share events of every account plus per-account label and campaign.

    ``events`` holds one row per share sorted by (account_id, timestamp, url) and
    ``accounts`` one row per account sorted by account_id. Both frames are treated
    as read-only; every transformation returns a new Corpus.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    events: pd.DataFrame
    accounts: pd.DataFrame
    split_assignment: Dict[str, SplitName] = Field(default_factory=dict)

    @classmethod
    def from_frames(cls, events: pd.DataFrame, accounts: pd.DataFrame,
                    split_assignment: Optional[Dict[str, SplitName]] = None) -> Corpus:
        events = (events[EVENT_FRAME_COLUMNS]
                  .sort_values(["account_id", "timestamp", "url"], kind="mergesort")
                  .reset_index(drop=True))
        accounts = (accounts[ACCOUNT_FRAME_COLUMNS]
                    .sort_values("account_id", kind="mergesort")
                    .reset_index(drop=True))
        events["timestamp"] = events["timestamp"].astype(np.int64)
        accounts["label"] = accounts["label"].astype(np.int64)
        return cls(events=events, accounts=accounts, split_assignment=dict(split_assignment or {}))

    @property
    def account_ids(self) -> List[str]:
        return self.accounts["account_id"].tolist()

    @property
    def campaigns(self) -> List[str]:
        return sorted(self.accounts["campaign"].unique().tolist())

    def __len__(self) -> int:
        return len(self.accounts)

    def account(self, account_id: str) -> AccountRecord:
        row = self.accounts.loc[self.accounts["account_id"] == account_id]
        if row.empty:
            raise CorpusError(f"Unknown account: {account_id}")
        row = row.iloc[0]
        rows = self.events.loc[self.events["account_id"] == account_id]
        events = [ShareEvent(account_id=account_id, timestamp=int(ts), url=url, domain=domain)
                  for ts, url, domain in zip(rows["timestamp"], rows["url"], rows["domain"])]
        return AccountRecord(account_id=account_id, label=int(row["label"]), campaign=row["campaign"],
                             events=events, first_active=int(row["first_active"]),
                             last_active=int(row["last_active"]))

    def labels(self, account_ids: Iterable[str]) -> np.ndarray:
        by_id = self.accounts.set_index("account_id")["label"]
        return by_id.reindex(list(account_ids)).to_numpy(dtype=np.int64)

    def campaign_of(self, account_ids: Iterable[str]) -> List[str]:
        by_id = self.accounts.set_index("account_id")["campaign"]
        return by_id.reindex(list(account_ids)).tolist()

    def ids_in_campaign(self, campaign: str) -> List[str]:
        return self.accounts.loc[self.accounts["campaign"] == campaign, "account_id"].tolist()

    def ids_in_split(self, split: SplitName) -> List[str]:
        return sorted(a for a, s in self.split_assignment.items() if s == split)

    @property
    def retained_ids(self) -> List[str]:
        return [a for a in self.account_ids if self.split_assignment.get(a) != SplitName.EXCLUDED]

    def restrict(self, account_ids: Iterable[str]) -> Corpus:
        keep = set(account_ids)
        return Corpus.from_frames(
            self.events.loc[self.events["account_id"].isin(keep)],
            self.accounts.loc[self.accounts["account_id"].isin(keep)],
            {a: s for a, s in self.split_assignment.items() if a in keep})

    def with_splits(self, split_assignment: Dict[str, SplitName]) -> Corpus:
        unknown = set(split_assignment) - set(self.account_ids)
        if unknown:
            raise CorpusError(f"Split assignment references unknown accounts: {sorted(unknown)[:5]}")
        return Corpus(events=self.events, accounts=self.accounts, split_assignment=dict(split_assignment))
