import pandas as pd
import pytest
from pydantic import ValidationError

from coordgraph.coordination.campaign_statistics import CdfMetric, campaign_cdf, cdf_distance
from coordgraph.coordination.courl_builder import compute_courls
from coordgraph.exceptions import CorpusError
from coordgraph.ingest.parser import parse_events
from coordgraph.model.baseline_spec import BaselineSpec
from coordgraph.model.campaign_spec import CampaignSpec
from coordgraph.model.event_format import EVENT_COLUMNS
from coordgraph.model.scenario import Scenario
from coordgraph.synth.generator import derive_seed, generate_baseline, generate_campaign, generate_scenario, \
    write_events
from coordgraph.synth.scenarios import SCENARIO_NAMES, read_scenario, scenario, write_scenario


def _campaign(name: str = "rus18", scale: float = 0.5, **overrides) -> CampaignSpec:
    values = dict(name=name, num_accounts=12, num_leads=2, duration_days=30.0, io_domain_pool=["riafan.ru"],
                  shared_domain_pool=["outlet.com", "news.org"], shares_per_account=22.0, resharers_per_source=5,
                  kernel_scale_minutes=scale, seed=3)
    return CampaignSpec(**{**values, **overrides})


def _baseline() -> BaselineSpec:
    return BaselineSpec(num_accounts=8, shared_domain_pool=["outlet.com", "news.org"], duration_days=30.0,
                        activity_rate=0.5, seed=3)


def test_campaign_generation_is_deterministic():
    pd.testing.assert_frame_equal(generate_campaign(_campaign()), generate_campaign(_campaign()))


def test_seed_changes_the_events():
    assert not generate_campaign(_campaign()).equals(generate_campaign(_campaign(seed=4)))


def test_derived_seeds_depend_on_keys():
    assert derive_seed(1, "rus18", "source", 0) != derive_seed(1, "rus18", "source", 1)
    assert derive_seed(1, "rus18") == derive_seed(1, "rus18")


def test_scenario_events_do_not_depend_on_campaign_order():
    campaigns = [_campaign("rus18"), _campaign("chn19", scale=20.0)]
    forward = generate_scenario(Scenario(name="pair", campaigns=campaigns, baseline=_baseline()))
    backward = generate_scenario(Scenario(name="pair", campaigns=campaigns[::-1], baseline=_baseline()))

    pd.testing.assert_frame_equal(forward, backward)


def test_campaign_and_baseline_labels():
    campaign = generate_campaign(_campaign())
    baseline = generate_baseline(_baseline())

    assert list(campaign.columns) == EVENT_COLUMNS
    assert set(campaign["label"]) == {1}
    assert set(campaign["campaign"]) == {"rus18"}
    assert campaign["account_id"].str.startswith("rus18_").all()
    assert set(baseline["label"]) == {0}
    assert baseline["account_id"].str.startswith("baseline_").all()


def test_tight_kernel_concentrates_courls_in_early_bins():
    corpus, _ = parse_events(generate_campaign(_campaign(scale=0.5)).to_csv(index=False).encode())

    counts = compute_courls(corpus).counts

    assert counts.sum() > 0
    assert counts[:, :10].sum() / counts.sum() > 0.9


def test_written_events_parse_back(tmp_path):
    events = generate_scenario(Scenario(name="pair", campaigns=[_campaign()], baseline=_baseline()))
    path = tmp_path / "events.csv"

    write_events(events, path)
    corpus, report = parse_events(path)

    assert report.rows_rejected == 0
    assert report.rows_loaded == len(events)
    assert set(corpus.campaigns) >= {"rus18", "baseline"}


def test_builtin_scenarios_validate():
    for name in SCENARIO_NAMES:
        built = scenario(name, seed=1)
        assert built.campaigns
        assert built.baseline.num_accounts > 0


def test_scenario_file_is_readable(tmp_path):
    path = tmp_path / "scenario.json"

    write_scenario(scenario("coordination-dial"), path)

    assert read_scenario(path).name == "coordination-dial"


def test_unknown_scenario_is_refused():
    with pytest.raises(CorpusError):
        scenario("no-such-scenario")


def test_campaign_needs_more_accounts_than_leads():
    with pytest.raises(ValidationError):
        _campaign(num_accounts=3, num_leads=3)


@pytest.fixture(scope="module")
def dial_cdfs():
    corpus, _ = parse_events(generate_scenario(scenario("coordination-dial")).to_csv(index=False).encode())
    courl_map = compute_courls(corpus)
    # Kernel scales 0.5, 5 and 50 minutes.
    return [campaign_cdf(courl_map, corpus, name) for name in ("rus18", "chn19", "iran19")]


def test_early_cdf_mass_falls_as_the_kernel_widens(dial_cdfs):
    tight, medium, loose = dial_cdfs

    assert not any(cdf.degenerate for cdf in dial_cdfs)
    assert tight.values[4] > medium.values[4] > loose.values[4]
    assert tight.values[0] > 0.5
    assert loose.values[9] < 0.5


@pytest.mark.parametrize("metric", [CdfMetric.MAD, CdfMetric.KS, CdfMetric.MSD])
def test_cdf_distances_order_campaigns_by_kernel_scale(dial_cdfs, metric):
    tight, medium, loose = dial_cdfs

    assert cdf_distance(tight, loose, metric) > cdf_distance(tight, medium, metric) > 0
    assert cdf_distance(tight, loose, metric) > cdf_distance(medium, loose, metric) > 0


def test_dormant_accounts_share_io_links_but_never_a_source():
    events = generate_campaign(_campaign(num_dormant=3, dormant_url_shares=30.0, dormant_io_shares=8.0))
    dormant = events.loc[events["account_id"].isin(["rus18_0012", "rus18_0013", "rus18_0014"])]
    sources = set(events.loc[events["url"].str.contains("/rus18/0"), "url"])

    assert set(dormant["label"]) == {1}
    assert dormant["account_id"].nunique() == 3
    assert dormant["url"].str.startswith("https://riafan.ru/rus18/dormant/").any()
    assert not set(dormant["url"]) & sources
    assert events["account_id"].nunique() == 15
