import pytest

from coordgraph.exceptions import CorpusError
from coordgraph.ingest.account_filter import account_statistics, filter_accounts
from coordgraph.ingest.domain_extractor import extract_domain
from coordgraph.ingest.parser import REASON_BAD_TIMESTAMP, parse_events, serialize_events
from coordgraph.ingest.splits import apply_split_manifest, define_splits, get_task, read_split_manifest, \
    write_split_manifest
from coordgraph.coordination.courl_builder import compute_courls
from coordgraph.model.account_statistics import AccountStatistics
from coordgraph.model.inclusion_criteria import InclusionCriteria
from coordgraph.model.split_name import SplitName
from tests.conftest import events_csv, make_corpus

PASSING = dict(active_days=90.0, tweets=300, url_shares=200, unique_domains=5, courls=10, neighbors=2)


def _statistics(**overrides) -> AccountStatistics:
    return AccountStatistics(account_id="a", **{**PASSING, **overrides})


def _split_corpus():
    rows = []
    for campaign in ["rus18", "rus20", "chn19", "chn20", "iran19", "iran21"]:
        rows += [(f"{campaign}_{k:02d}", 100 + k, f"https://{campaign}.example.com/{k}", 1, campaign)
                 for k in range(10)]
    rows += [(f"baseline_{k:03d}", 100 + k, f"https://outlet.example.org/{k}", 0, "baseline") for k in range(40)]
    return make_corpus(rows)


def test_parse_groups_events_per_account_sorted():
    corpus, report = parse_events(events_csv([
        ("b", 20, "https://x.com/1", 0, "baseline"),
        ("a", 50, "https://y.org/2", 1, "rus18"),
        ("a", 10, "https://y.org/1", 1, "rus18"),
    ]))

    assert corpus.account_ids == ["a", "b"]
    assert [e.timestamp for e in corpus.account("a").events] == [10, 50]
    assert report.rows_loaded == 3
    assert report.rows_rejected == 0


def test_parse_rejects_non_integer_timestamp():
    corpus, report = parse_events(events_csv([
        ("a", "abc", "https://y.org/1", 1, "rus18"),
        ("a", 10, "https://y.org/2", 1, "rus18"),
    ]))

    assert report.rows_rejected == 1
    assert report.rejected_by_reason == {REASON_BAD_TIMESTAMP: 1}
    assert len(corpus.events) == 1


def test_parse_empty_stream_gives_empty_corpus():
    corpus, report = parse_events(b"account_id,timestamp,url,label,campaign\n")

    assert len(corpus) == 0
    assert report.rows_read == 0


def test_parse_unreadable_stream_is_fatal():
    with pytest.raises(CorpusError):
        parse_events(b"\xff\xfe\x00garbage")


def test_parse_serialize_parse_is_a_fixed_point():
    corpus, _ = parse_events(events_csv([
        ("b", 20, "https://www.nytimes.com/2020/x", 0, "baseline"),
        ("a", 10, "http://news.bbc.co.uk/a", 1, "rus18"),
        ("a", 10, "https://y.org/1", 1, "rus18"),
    ]))
    first = serialize_events(corpus)
    again, _ = parse_events(first)

    assert serialize_events(again) == first


@pytest.mark.parametrize("url, expected", [
    ("https://www.nytimes.com/2020/x", "nytimes.com"),
    ("http://news.bbc.co.uk/a", "bbc.co.uk"),
    ("HTTPS://WWW.Example.COM/Path", "example.com"),
    ("not a url", ""),
    ("", ""),
])
def test_extract_domain(url, expected):
    assert extract_domain(url) == expected


@pytest.mark.parametrize("overrides, retained", [
    ({}, True),
    ({"tweets": 299}, False),
    ({"active_days": 89.9}, False),
    ({"url_shares": 199}, False),
    ({"unique_domains": 4}, False),
    ({"courls": 10, "neighbors": 1}, False),
    ({"courls": 9}, False),
])
def test_filter_accounts_thresholds_are_inclusive(overrides, retained):
    corpus = make_corpus([("a", 1, "https://y.org/1", 1, "rus18")])

    filtered = filter_accounts(corpus, InclusionCriteria(), {"a": _statistics(**overrides)})

    assert (filtered.retained_ids == ["a"]) is retained


def test_filter_accounts_is_idempotent(clique_corpus):
    criteria = InclusionCriteria(min_active_days=0, min_tweets=1, min_url_shares=1, min_unique_domains=1,
                                 min_courls=4, min_neighbors=4)
    statistics = account_statistics(clique_corpus, compute_courls(clique_corpus))

    once = filter_accounts(clique_corpus, criteria, statistics)
    twice = filter_accounts(once, criteria, statistics)

    assert once.retained_ids == [f"io{k}" for k in range(5)]
    assert twice.split_assignment == once.split_assignment


def test_account_statistics_counts_courls_and_neighbors(clique_corpus):
    statistics = account_statistics(clique_corpus, compute_courls(clique_corpus))

    assert statistics["io0"].courls == 4
    assert statistics["io0"].neighbors == 4
    assert statistics["base0"].courls == 0
    assert statistics["base0"].url_shares == 1


def test_a1_trains_on_the_earlier_campaign_only():
    corpus = define_splits(_split_corpus(), get_task("A1"), seed=3)

    train = corpus.ids_in_split(SplitName.TRAIN)
    io_train = {a.split("_")[0] for a in train if not a.startswith("baseline")}
    assert io_train == {"rus18"}
    assert {a.split("_")[0] for a in corpus.ids_in_split(SplitName.TEST)} == {"rus20", "baseline"}


def test_b1_trains_on_other_operations():
    corpus = define_splits(_split_corpus(), get_task("B1"), seed=3)

    io_train = {a.split("_")[0] for a in corpus.ids_in_split(SplitName.TRAIN) if not a.startswith("baseline")}
    assert io_train == {"chn19", "iran19"}


def test_paired_tasks_share_val_and_test_sets():
    corpus = _split_corpus()
    for k in (1, 2, 3):
        a = define_splits(corpus, get_task(f"A{k}"), seed=11)
        b = define_splits(corpus, get_task(f"B{k}"), seed=11)
        assert a.ids_in_split(SplitName.VAL) == b.ids_in_split(SplitName.VAL)
        assert a.ids_in_split(SplitName.TEST) == b.ids_in_split(SplitName.TEST)


def test_splits_are_disjoint():
    corpus = define_splits(_split_corpus(), get_task("B2"), seed=0)

    splits = [set(corpus.ids_in_split(s)) for s in (SplitName.TRAIN, SplitName.VAL, SplitName.TEST)]
    assert not splits[0] & splits[1]
    assert not splits[0] & splits[2]
    assert not splits[1] & splits[2]


def test_unknown_campaign_is_fatal():
    corpus = make_corpus([("a", 1, "https://y.org/1", 1, "rus18"), ("b", 1, "https://y.org/1", 0, "baseline")])

    with pytest.raises(CorpusError):
        define_splits(corpus, get_task("A1"), seed=0)


def test_unknown_task_is_fatal():
    with pytest.raises(CorpusError):
        get_task("C1")


def test_split_manifest_restores_assignment(tmp_path):
    corpus = _split_corpus()
    split = define_splits(corpus, get_task("A2"), seed=5)
    path = tmp_path / "A2_seed5.json"

    write_split_manifest(split, "A2", 5, path)
    restored = apply_split_manifest(corpus, read_split_manifest(path))

    assert restored.split_assignment == split.split_assignment
