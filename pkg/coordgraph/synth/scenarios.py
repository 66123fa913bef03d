import logging
from pathlib import Path
from typing import Callable, Dict, List

from coordgraph import json_serializer
from coordgraph.exceptions import CorpusError
from coordgraph.model.baseline_spec import BaselineSpec
from coordgraph.model.campaign_spec import CampaignSpec
from coordgraph.model.scenario import Scenario

log = logging.getLogger(__name__)

# 2018-01-01 / 2019-06-01 / 2020-01-01 / 2021-03-01 UTC.
WAVE_STARTS = {
    "rus18": 1_514_764_800, "rus20": 1_577_836_800,
    "chn19": 1_559_347_200, "chn20": 1_577_836_800,
    "iran19": 1_559_347_200, "iran21": 1_614_556_800,
}
OPERATION_SUFFIXES = {"rus": ["ru", "com"], "chn": ["cn", "com.cn"], "iran": ["ir", "co.uk"]}


def shared_pool(size: int = 200) -> List[str]:
    suffixes = ["com", "org", "net", "co.uk", "com.au"]
    return [f"outlet{k:03d}.{suffixes[k % len(suffixes)]}" for k in range(size)]


def io_pool(operation: str, size: int = 20) -> List[str]:
    suffixes = OPERATION_SUFFIXES[operation]
    return [f"{operation}-media{k:02d}.{suffixes[k % len(suffixes)]}" for k in range(size)]


def _three_ops(seed: int) -> Scenario:
    """
    Three independent operations with two waves each, about 2,000 accounts in all.
    Waves of one operation share their IO domain pool; the pools of different
    operations are disjoint. Every wave also has dormant accounts that look organic
    apart from a few IO links.
    """
    shared = shared_pool()
    campaigns = []
    for k, (operation, waves) in enumerate({"rus": ["rus18", "rus20"], "chn": ["chn19", "chn20"],
                                            "iran": ["iran19", "iran21"]}.items()):
        for wave, name in enumerate(waves):
            campaigns.append(CampaignSpec(name=name, num_accounts=150, start=WAVE_STARTS[name],
                                          io_domain_pool=io_pool(operation), shared_domain_pool=shared,
                                          io_domain_mix=0.7, kernel="exponential",
                                          kernel_scale_minutes=[1.0, 2.5, 4.0][k] * (1 + 0.5 * wave),
                                          shares_per_account=300.0, resharers_per_source=4, num_dormant=20,
                                          dormant_url_shares=240.0, dormant_io_shares=40.0, items_per_domain=5,
                                          seed=seed))
    # Shares on par with the dormant accounts so that only IO links tell them apart.
    baseline = BaselineSpec(num_accounts=1100, shared_domain_pool=shared, start=WAVE_STARTS["rus18"],
                            duration_days=3 * 365.0, activity_rate=0.22, items_per_domain=5, text_ratio=0.5,
                            seed=seed)
    return Scenario(name="three-ops", campaigns=campaigns, baseline=baseline)


def _coordination_dial(seed: int) -> Scenario:
    """
    Same operation size at three kernel scales, for ordering the intra-campaign CDFs.
    """
    shared = shared_pool()
    campaigns = [CampaignSpec(name=name, num_accounts=30, io_domain_pool=io_pool(operation),
                              shared_domain_pool=shared, kernel_scale_minutes=scale, seed=seed)
                 for name, operation, scale in (("rus18", "rus", 0.5), ("chn19", "chn", 5.0),
                                                ("iran19", "iran", 50.0))]
    baseline = BaselineSpec(num_accounts=100, shared_domain_pool=shared, seed=seed)
    return Scenario(name="coordination-dial", campaigns=campaigns, baseline=baseline)


SCENARIOS: Dict[str, Callable[[int], Scenario]] = {
    "three-ops": _three_ops,
    "coordination-dial": _coordination_dial,
}
SCENARIO_NAMES = list(SCENARIOS)


def scenario(name: str, seed: int = 7) -> Scenario:
    if name not in SCENARIOS:
        raise CorpusError(f"Unknown scenario {name!r}. Known scenarios: {SCENARIO_NAMES}")
    return SCENARIOS[name](seed)


def write_scenario(value: Scenario, path: Path) -> None:
    json_serializer.serialize_to_json(value, path)


def read_scenario(path: Path) -> Scenario:
    return json_serializer.load_from_json(path, Scenario)
