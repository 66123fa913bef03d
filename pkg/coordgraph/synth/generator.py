import logging
import zlib
from pathlib import Path
from typing import List, Sequence

import numpy as np
import pandas as pd

from coordgraph import file_utils
from coordgraph.model.account_record import BASELINE_CAMPAIGN
from coordgraph.model.baseline_spec import BaselineSpec
from coordgraph.model.campaign_spec import CampaignSpec
from coordgraph.model.event_format import EVENT_COLUMNS
from coordgraph.model.scenario import Scenario

log = logging.getLogger(__name__)

SECONDS_PER_DAY = 86400
_MASK = (1 << 64) - 1


def splitmix64(state: int) -> int:
    state = (state + 0x9E3779B97F4A7C15) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def derive_seed(seed: int, *keys) -> int:
    """
    Sub-seed for one generation unit; independent of the order units are generated in.
    """
    state = splitmix64(seed & _MASK)
    for key in keys:
        state = splitmix64(state ^ zlib.crc32(str(key).encode("utf-8")))
    return state


def rng_for(seed: int, *keys) -> np.random.Generator:
    return np.random.default_rng(derive_seed(seed, *keys))


def campaign_account_ids(spec: CampaignSpec) -> List[str]:
    return [f"{spec.name}_{k:04d}" for k in range(spec.num_accounts)]


def dormant_account_ids(spec: CampaignSpec) -> List[str]:
    # Numbered after the coordinating accounts.
    return [f"{spec.name}_{k:04d}" for k in range(spec.num_accounts, spec.num_accounts + spec.num_dormant)]


def baseline_account_ids(spec: BaselineSpec) -> List[str]:
    return [f"{BASELINE_CAMPAIGN}_{k:05d}" for k in range(spec.num_accounts)]


def generate_campaign(spec: CampaignSpec) -> pd.DataFrame:
    """
    Each source item is posted by one lead account at a uniform time and re-shared by
    `resharers_per_source` other campaign accounts after kernel-distributed delays.
    Items come from the IO pool with probability io_domain_mix, otherwise from the
    shared pool; every item has its own URL path. Dormant accounts post on their own
    schedule and never re-share a source.
    """
    accounts = campaign_account_ids(spec)
    duration = int(round(spec.duration_days * SECONDS_PER_DAY))
    num_sources = int(round(spec.num_accounts * spec.shares_per_account / (1 + spec.resharers_per_source)))
    resharers = min(spec.resharers_per_source, spec.num_accounts - 1)

    account_col: List[str] = []
    time_col: List[int] = []
    url_col: List[str] = []
    for source in range(num_sources):
        rng = rng_for(spec.seed, spec.name, "source", source)
        poster = int(rng.integers(spec.num_leads))
        posted_at = spec.start + int(rng.integers(duration))
        pool = spec.io_domain_pool if rng.random() < spec.io_domain_mix else spec.shared_domain_pool
        url = f"https://{pool[int(rng.integers(len(pool)))]}/{spec.name}/{source:06d}"

        others = np.delete(np.arange(spec.num_accounts), poster)
        chosen = rng.choice(others, size=resharers, replace=False)
        delays = np.rint(_kernel_minutes(rng, spec, resharers) * 60).astype(np.int64)

        account_col.append(accounts[poster])
        time_col.append(posted_at)
        url_col.append(url)
        account_col.extend(accounts[k] for k in chosen)
        time_col.extend((posted_at + delays).tolist())
        url_col.extend([url] * resharers)

    for k, account_id in enumerate(accounts):
        rng = rng_for(spec.seed, spec.name, "text", k)
        _append_text_posts(rng, account_id, spec.shares_per_account * spec.text_ratio, spec.start, duration,
                           account_col, time_col, url_col)

    popularity = zipf_popularity(len(spec.shared_domain_pool), spec.zipf_exponent)
    for k, account_id in enumerate(dormant_account_ids(spec)):
        rng = rng_for(spec.seed, spec.name, "dormant", k)
        shares = int(rng.poisson(spec.dormant_url_shares))
        _append_organic_shares(rng, account_id, shares, spec.shared_domain_pool, popularity, spec.items_per_domain,
                               spec.start, duration, account_col, time_col, url_col)
        io_shares = int(rng.poisson(spec.dormant_io_shares))
        io_times = spec.start + rng.integers(duration, size=io_shares)
        io_domains = rng.integers(len(spec.io_domain_pool), size=io_shares)
        account_col.extend([account_id] * io_shares)
        time_col.extend(io_times.tolist())
        url_col.extend(f"https://{spec.io_domain_pool[d]}/{spec.name}/dormant/{k:04d}/{j:04d}"
                       for j, d in enumerate(io_domains))
        _append_text_posts(rng, account_id, (shares + io_shares) * spec.text_ratio, spec.start, duration,
                           account_col, time_col, url_col)

    return _events_frame(account_col, time_col, url_col, label=1, campaign=spec.name)


def generate_baseline(spec: BaselineSpec) -> pd.DataFrame:
    """
    Independent Poisson activity per account; each share picks a domain by Zipf
    popularity and one of its items uniformly. No coordination is injected.
    """
    accounts = baseline_account_ids(spec)
    duration = int(round(spec.duration_days * SECONDS_PER_DAY))
    popularity = zipf_popularity(len(spec.shared_domain_pool), spec.zipf_exponent)

    account_col: List[str] = []
    time_col: List[int] = []
    url_col: List[str] = []
    for k, account_id in enumerate(accounts):
        rng = rng_for(spec.seed, BASELINE_CAMPAIGN, k)
        shares = int(rng.poisson(spec.activity_rate * spec.duration_days))
        _append_organic_shares(rng, account_id, shares, spec.shared_domain_pool, popularity, spec.items_per_domain,
                               spec.start, duration, account_col, time_col, url_col)
        _append_text_posts(rng, account_id, shares * spec.text_ratio, spec.start, duration,
                           account_col, time_col, url_col)

    return _events_frame(account_col, time_col, url_col, label=0, campaign=BASELINE_CAMPAIGN)


def generate_scenario(scenario: Scenario) -> pd.DataFrame:
    frames = [generate_campaign(spec) for spec in scenario.campaigns] + [generate_baseline(scenario.baseline)]
    events = pd.concat(frames, ignore_index=True)
    events = events.sort_values(["account_id", "timestamp", "url"], kind="mergesort").reset_index(drop=True)
    log.info("Synthetic scenario generated: %s", scenario.name)
    log.info("|-Campaigns: %s", ", ".join(spec.name for spec in scenario.campaigns))
    log.info("|-Accounts: %d", events["account_id"].nunique())
    log.info("|-Events: %d", len(events))
    return events


def write_events(events: pd.DataFrame, path: Path) -> None:
    file_utils.write_csv_atomically(Path(path), events[EVENT_COLUMNS])


def _kernel_minutes(rng: np.random.Generator, spec: CampaignSpec, size: int) -> np.ndarray:
    if spec.kernel == "exponential":
        return rng.exponential(spec.kernel_scale_minutes, size=size)
    # Median of the lognormal delay equals the kernel scale.
    return rng.lognormal(np.log(spec.kernel_scale_minutes), spec.kernel_sigma, size=size)


def zipf_popularity(size: int, exponent: float) -> np.ndarray:
    popularity = np.arange(1, size + 1, dtype=np.float64) ** -exponent
    return popularity / popularity.sum()


def _append_organic_shares(rng: np.random.Generator, account_id: str, count: int, pool: Sequence[str],
                           popularity: np.ndarray, items_per_domain: int, start: int, duration: int,
                           account_col: List[str], time_col: List[int], url_col: List[str]) -> None:
    # Items of one domain are shared by every organic account alike, so they co-occur by chance.
    times = start + rng.integers(duration, size=count)
    domains = rng.choice(len(pool), size=count, p=popularity)
    items = rng.integers(items_per_domain, size=count)
    account_col.extend([account_id] * count)
    time_col.extend(times.tolist())
    url_col.extend(f"https://{pool[d]}/item/{i:04d}" for d, i in zip(domains, items))


def _append_text_posts(rng: np.random.Generator, account_id: str, mean_count: float, start: int, duration: int,
                       account_col: List[str], time_col: List[int], url_col: List[str]) -> None:
    # Text-only posts have no domain and count as tweets but not as URL shares.
    count = int(rng.poisson(mean_count)) if mean_count > 0 else 0
    times = start + rng.integers(duration, size=count)
    account_col.extend([account_id] * count)
    time_col.extend(times.tolist())
    url_col.extend(f"status:{account_id}/{j}" for j in range(count))


def _events_frame(account_col: Sequence[str], time_col: Sequence[int], url_col: Sequence[str], label: int,
                  campaign: str) -> pd.DataFrame:
    frame = pd.DataFrame({
        "account_id": pd.Series(list(account_col), dtype=object),
        "timestamp": np.asarray(time_col, dtype=np.int64),
        "url": pd.Series(list(url_col), dtype=object),
    })
    frame["label"] = label
    frame["campaign"] = campaign
    return frame.sort_values(["account_id", "timestamp", "url"], kind="mergesort").reset_index(drop=True)[EVENT_COLUMNS]
