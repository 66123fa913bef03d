import math

import numpy as np
import pytest

from coordgraph.censorship.domain_censor import build_content_features, censor_and_select, domain_frequency_table, \
    gamma_ratio, term_frequencies, vocabulary_frame, vocabulary_from_frame
from coordgraph.censorship.domain_report import UNCOMMON_ROW, domain_report
from coordgraph.exceptions import DegenerateDataError
from coordgraph.model.censor_config import CensorConfig
from coordgraph.model.domain_frequency_table import DomainFrequencyTable
from coordgraph.model.split_name import SplitName
from tests.conftest import make_corpus


def _table(io: dict, baseline: dict) -> DomainFrequencyTable:
    return DomainFrequencyTable.from_counts(io, baseline)


def _mixed_table() -> DomainFrequencyTable:
    # riafan.ru is IO-exclusive, bbc.co.uk baseline-exclusive, the rest shared.
    return _table({"riafan.ru": 40, "nytimes.com": 30, "shared.org": 10},
                  {"bbc.co.uk": 50, "nytimes.com": 60, "shared.org": 5})


def _labelled_corpus():
    rows = [("io0", 1, "https://riafan.ru/a", 1, "rus18"),
            ("io0", 2, "https://riafan.ru/b", 1, "rus18"),
            ("io0", 3, "https://nytimes.com/a", 1, "rus18"),
            ("io1", 1, "https://nytimes.com/b", 1, "rus18"),
            ("b0", 1, "https://bbc.co.uk/a", 0, "baseline"),
            ("b0", 2, "https://nytimes.com/c", 0, "baseline"),
            ("b1", 1, "https://bbc.co.uk/b", 0, "baseline"),
            ("b1", 2, "https://bbc.co.uk/c", 0, "baseline"),
            ("t0", 1, "https://riafan.ru/z", 1, "rus18")]
    corpus = make_corpus(rows)
    return corpus.with_splits({"io0": SplitName.TRAIN, "io1": SplitName.TRAIN, "b0": SplitName.TRAIN,
                               "b1": SplitName.TRAIN, "t0": SplitName.TEST})


def test_single_domain_has_unit_frequency():
    tf_io, tf_baseline = term_frequencies(_table({"a.com": 7}, {"a.com": 2}))

    assert tf_io.tolist() == [1.0]
    assert tf_baseline.tolist() == [1.0]


def test_term_frequency_arithmetic():
    tf_io, _ = term_frequencies(_table({"a.com": 3, "b.com": 1}, {"a.com": 1}))

    assert tf_io[0] == pytest.approx(0.75)


def test_term_frequencies_sum_to_one():
    rng = np.random.default_rng(0)
    for _ in range(20):
        domains = [f"d{k}.com" for k in range(int(rng.integers(1, 30)))]
        table = _table({d: int(rng.integers(1, 100)) for d in domains},
                       {d: int(rng.integers(0, 100)) for d in domains} | {domains[0]: 1})
        for tf in term_frequencies(table):
            assert abs(tf.sum() - 1.0) < 1e-12


def test_zero_class_total_is_fatal():
    with pytest.raises(DegenerateDataError):
        term_frequencies(_table({"a.com": 3}, {}))


def test_gamma_parity_limits_and_convention():
    assert gamma_ratio([0.5, 0.5], [0.5, 0.5]).tolist() == [1.0, 1.0]

    gamma = gamma_ratio([0.4, 0.0, 0.0], [0.0, 0.3, 0.0])

    assert math.isinf(gamma[0])
    assert gamma[1] == 0.0
    assert gamma[2] == 0.0


def test_infinite_gamma_max_censors_nothing():
    vocabulary = censor_and_select(_mixed_table(), CensorConfig(gamma_max=math.inf, k_top=10))

    assert sorted(vocabulary) == ["bbc.co.uk", "nytimes.com", "riafan.ru", "shared.org"]


def test_zero_gamma_max_keeps_only_baseline_exclusive_domains():
    vocabulary = censor_and_select(_mixed_table(), CensorConfig(gamma_max=0.0, k_top=10))

    assert vocabulary == ["bbc.co.uk"]


@pytest.mark.parametrize("gamma_max", [0.0, 0.54, 1.0, 100.0, 1e4])
def test_io_exclusive_domain_is_censored_for_finite_gamma_max(gamma_max):
    assert "riafan.ru" not in censor_and_select(_mixed_table(), CensorConfig(gamma_max=gamma_max, k_top=10))


def test_top_k_by_total_frequency():
    table = _table({"a.com": 50, "b.com": 25, "c.com": 5}, {"a.com": 50, "b.com": 25, "c.com": 5})

    assert censor_and_select(table, CensorConfig(gamma_max=math.inf, k_top=2)) == ["a.com", "b.com"]


def test_frequency_ties_break_lexicographically():
    table = _table({"b.com": 5, "a.com": 5}, {"b.com": 5, "a.com": 5})

    assert censor_and_select(table, CensorConfig(gamma_max=math.inf, k_top=1)) == ["a.com"]


def test_empty_survivor_set_is_an_error():
    with pytest.raises(DegenerateDataError):
        censor_and_select(_table({"a.com": 5, "b.com": 5}, {"a.com": 1}), CensorConfig(gamma_max=0.1, k_top=5))


def test_retained_sets_grow_with_gamma_max():
    rng = np.random.default_rng(3)
    domains = [f"d{k}.com" for k in range(40)]
    table = _table({d: int(rng.integers(0, 50)) for d in domains} | {domains[0]: 1, domains[1]: 0},
                   {d: int(rng.integers(0, 50)) for d in domains} | {domains[1]: 1})
    previous = set()
    for gamma_max in [0.0, 0.25, 0.54, 1.0, 2.0, math.inf]:
        retained = set(censor_and_select(table, CensorConfig(gamma_max=gamma_max, k_top=len(domains))))
        assert previous <= retained
        previous = retained


def test_vocabulary_frame_selected_rows_match_selection():
    config = CensorConfig(gamma_max=0.54, k_top=2)
    frame = vocabulary_frame(_mixed_table(), config)

    assert list(frame.columns) == ["domain", "gamma", "total_count", "censored", "selected"]
    assert vocabulary_from_frame(frame) == censor_and_select(_mixed_table(), config)


def test_frequency_table_uses_training_split_only():
    corpus = _labelled_corpus()
    table = domain_frequency_table(corpus, SplitName.TRAIN)

    assert dict(zip(table.domains, table.counts_io.tolist())) == {"bbc.co.uk": 0, "nytimes.com": 2,
                                                                  "riafan.ru": 2}

    relabelled = corpus.with_splits({**corpus.split_assignment, "t0": SplitName.VAL})
    assert domain_frequency_table(relabelled).domains == table.domains


def test_content_features_count_vocabulary_shares():
    corpus = _labelled_corpus()
    features = build_content_features(corpus, ["bbc.co.uk", "nytimes.com"], standardize=False,
                                      account_ids=["b1", "io0", "t0"])

    assert features.raw_counts.tolist() == [[2, 0], [0, 1], [0, 0]]


def test_standardized_train_columns_are_centered():
    corpus = _labelled_corpus()
    features = build_content_features(corpus, ["bbc.co.uk", "nytimes.com", "riafan.ru"])

    train_rows = [k for k, a in enumerate(features.account_ids) if corpus.split_assignment[a] == SplitName.TRAIN]
    train = features.features[train_rows]
    np.testing.assert_allclose(train.mean(axis=0), 0.0, atol=1e-9)
    np.testing.assert_allclose(train.std(axis=0), 1.0, atol=1e-9)


def test_domain_report_marks_censored_domains_and_folds_the_rest():
    corpus = _labelled_corpus()
    report = domain_report(corpus, censored=["riafan.ru"], top_n=1)

    rus = report.loc[report["campaign"] == "rus18"]
    assert rus.iloc[0]["domain"] == "riafan.ru"
    assert bool(rus.iloc[0]["censored"])
    assert rus.iloc[-1]["domain"] == UNCOMMON_ROW
    assert rus.iloc[-1]["count"] == 2
