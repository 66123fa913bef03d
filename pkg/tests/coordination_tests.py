import math
from itertools import product

import numpy as np
import pytest

from coordgraph.coordination.campaign_statistics import CdfMetric, campaign_cdf, campaign_courl_series, \
    cdf_distance, cdf_distance_matrix, cross_campaign_matrix
from coordgraph.coordination.courl_builder import compute_courls, symmetrize
from coordgraph.coordination.courl_io import read_courl_csv, write_courl_csv
from coordgraph.exceptions import DegenerateDataError
from coordgraph.model.coordination_cdf import CoordinationCdf
from coordgraph.model.courl_map import NUM_BINS, CoUrlMap
from tests.conftest import make_corpus


def brute_force_courls(rows):
    """
    All ordered share pairs of one url by distinct accounts, O(n^2).
    """
    result = {}
    for (a, ta, ua, _, _), (b, tb, ub, _, _) in product(rows, rows):
        if a == b or ua != ub:
            continue
        delta = tb - ta
        # a leads when it is strictly earlier, or simultaneous and lexicographically smaller
        if delta < 0 or (delta == 0 and not a < b) or delta > NUM_BINS * 60:
            continue
        tau = max(1, math.ceil(delta / 60))
        result.setdefault((a, b), np.zeros(NUM_BINS, dtype=np.int64))[tau - 1] += 1
    return result


def _map_as_dict(courl_map: CoUrlMap):
    return {pair: vector for pair, vector in courl_map.as_dict().items() if vector.any()}


def _cdf(values) -> CoordinationCdf:
    return CoordinationCdf(campaign="c", values=list(values), total_count=1)


def test_thirty_seconds_apart_fall_into_bin_one():
    corpus = make_corpus([("a", 0, "https://u.com/1", 1, "rus18"), ("b", 30, "https://u.com/1", 1, "rus18")])

    vector = compute_courls(corpus).vector("a", "b")

    assert vector[0] == 1
    assert vector.sum() == 1


def test_fourteen_and_a_half_minutes_fall_into_bin_fifteen():
    corpus = make_corpus([("a", 0, "https://u.com/1", 1, "rus18"), ("b", 870, "https://u.com/1", 1, "rus18")])

    assert compute_courls(corpus).vector("a", "b")[14] == 1


def test_shares_beyond_the_window_do_not_count():
    corpus = make_corpus([("a", 0, "https://u.com/1", 1, "rus18"), ("b", 6030, "https://u.com/1", 1, "rus18")])

    assert len(compute_courls(corpus)) == 0


def test_simultaneous_shares_are_led_by_smaller_account_id():
    corpus = make_corpus([("b", 50, "https://u.com/1", 1, "rus18"), ("a", 50, "https://u.com/1", 1, "rus18")])

    courl_map = compute_courls(corpus)

    assert courl_map.vector("a", "b")[0] == 1
    assert courl_map.vector("b", "a").sum() == 0


def test_clique_has_bin_one_mass_for_every_pair(clique_corpus):
    symmetric = symmetrize(compute_courls(clique_corpus))

    ids = [f"io{k}" for k in range(5)]
    pairs = [(a, b) for a in ids for b in ids if a < b]
    assert len(pairs) == 10
    assert all(symmetric.vector(a, b)[0] >= 1 for a, b in pairs)


def test_compute_courls_matches_brute_force_on_random_corpora():
    rng = np.random.default_rng(2024)
    for _ in range(200):
        accounts = [f"acc{k}" for k in range(int(rng.integers(2, 11)))]
        urls = [f"https://site{k}.com/p" for k in range(int(rng.integers(1, 4)))]
        rows = [(str(rng.choice(accounts)), int(rng.integers(0, 9000)), str(rng.choice(urls)), 1, "rus18")
                for _ in range(int(rng.integers(1, 51)))]

        actual = _map_as_dict(compute_courls(make_corpus(rows)))
        expected = brute_force_courls(rows)

        assert actual.keys() == expected.keys()
        for pair, vector in expected.items():
            np.testing.assert_array_equal(actual[pair], vector)


def test_event_order_does_not_change_histograms():
    rng = np.random.default_rng(5)
    rows = [(f"a{k % 4}", int(rng.integers(0, 3000)), f"https://s.com/{k % 3}", 1, "rus18") for k in range(30)]
    shuffled = [rows[k] for k in rng.permutation(len(rows))]

    first = _map_as_dict(compute_courls(make_corpus(rows)))
    second = _map_as_dict(compute_courls(make_corpus(shuffled)))

    assert first.keys() == second.keys()
    for pair in first:
        np.testing.assert_array_equal(first[pair], second[pair])


def test_symmetrize_adds_both_directions():
    counts = np.zeros((2, NUM_BINS), dtype=np.int64)
    counts[0, 0], counts[1, 0] = 3, 1
    directed = CoUrlMap(account_i=np.array(["a", "b"], dtype=object), account_j=np.array(["b", "a"], dtype=object),
                        counts=counts)

    symmetric = symmetrize(directed)

    assert symmetric.vector("a", "b")[0] == 4
    assert symmetric.vector("b", "a")[0] == 4


def test_symmetrize_creates_missing_reverse_pair():
    counts = np.zeros((1, NUM_BINS), dtype=np.int64)
    counts[0, 4] = 2
    directed = CoUrlMap(account_i=np.array(["a"], dtype=object), account_j=np.array(["b"], dtype=object),
                        counts=counts)

    symmetric = symmetrize(directed)

    np.testing.assert_array_equal(symmetric.vector("b", "a"), symmetric.vector("a", "b"))


def test_symmetrize_twice_is_refused(clique_corpus):
    symmetric = symmetrize(compute_courls(clique_corpus))

    with pytest.raises(ValueError):
        symmetrize(symmetric)


def test_symmetrized_mass_equals_both_directions():
    rng = np.random.default_rng(9)
    rows = [(f"a{k % 5}", int(rng.integers(0, 4000)), f"https://s.com/{k % 2}", 1, "rus18") for k in range(40)]
    directed = compute_courls(make_corpus(rows))
    symmetric = symmetrize(directed)

    for (a, b), vector in symmetric.as_dict().items():
        assert vector.sum() == directed.vector(a, b).sum() + directed.vector(b, a).sum()


def test_courl_csv_round_trip(tmp_path, clique_corpus):
    symmetric = symmetrize(compute_courls(clique_corpus))
    path = tmp_path / "courls.csv"

    write_courl_csv(symmetric, path)
    restored = read_courl_csv(path, is_symmetric=True)

    assert list(restored.account_i) == list(symmetric.account_i)
    np.testing.assert_array_equal(restored.counts, symmetric.counts)


def _campaign_map(histogram) -> CoUrlMap:
    return CoUrlMap(account_i=np.array(["x0"], dtype=object), account_j=np.array(["x1"], dtype=object),
                    counts=np.asarray([histogram], dtype=np.int64))


def _campaign_corpus():
    return make_corpus([("x0", 0, "https://u.com/1", 1, "rus18"), ("x1", 0, "https://v.com/1", 1, "rus18"),
                        ("y0", 0, "https://w.com/1", 1, "chn19")])


def test_cdf_all_mass_in_first_bin():
    histogram = np.zeros(NUM_BINS, dtype=np.int64)
    histogram[0] = 7

    cdf = campaign_cdf(_campaign_map(histogram), _campaign_corpus(), "rus18")

    assert cdf.values == [1.0] * NUM_BINS


def test_cdf_of_uniform_mass_is_linear():
    cdf = campaign_cdf(_campaign_map(np.ones(NUM_BINS, dtype=np.int64)), _campaign_corpus(), "rus18")

    np.testing.assert_allclose(cdf.values, np.arange(1, NUM_BINS + 1) / NUM_BINS)


def test_cdf_of_two_bins():
    histogram = np.zeros(NUM_BINS, dtype=np.int64)
    histogram[9], histogram[19] = 30, 70

    cdf = campaign_cdf(_campaign_map(histogram), _campaign_corpus(), "rus18")

    assert cdf.values[9] == pytest.approx(0.3)
    assert cdf.values[19] == pytest.approx(1.0)
    assert all(a <= b for a, b in zip(cdf.values, cdf.values[1:]))


def test_cdf_without_intra_campaign_mass_is_degenerate():
    cdf = campaign_cdf(_campaign_map(np.ones(NUM_BINS, dtype=np.int64)), _campaign_corpus(), "chn19")

    assert cdf.degenerate
    with pytest.raises(DegenerateDataError):
        cdf_distance(cdf, cdf, CdfMetric.MAD)


@pytest.mark.parametrize("metric", list(CdfMetric))
def test_identical_cdfs_are_at_distance_zero(metric):
    values = np.linspace(0.1, 1.0, NUM_BINS)

    assert cdf_distance(_cdf(values), _cdf(values), metric) == 0.0


def test_ks_between_step_and_uniform():
    step = _cdf([1.0] * NUM_BINS)
    uniform = _cdf(np.arange(1, NUM_BINS + 1) / NUM_BINS)

    assert cdf_distance(step, uniform, CdfMetric.KS) == pytest.approx(0.99)


def test_distances_are_symmetric():
    rng = np.random.default_rng(1)
    for _ in range(20):
        a = _cdf(np.sort(rng.random(NUM_BINS)))
        b = _cdf(np.sort(rng.random(NUM_BINS)))
        for metric in CdfMetric:
            assert cdf_distance(a, b, metric) == pytest.approx(cdf_distance(b, a, metric))


def test_distance_matrix_leaves_degenerate_campaigns_empty():
    good = _cdf(np.linspace(0.5, 1.0, NUM_BINS))
    bad = CoordinationCdf(campaign="empty", values=[0.0] * NUM_BINS, total_count=0, degenerate=True)

    matrix = cdf_distance_matrix([good, bad], CdfMetric.MSD)

    assert matrix.iat[0, 0] == 0.0
    assert np.isnan(matrix.iat[0, 1])


def _matrix_corpus():
    rows = [(f"a{k}", 0, f"https://a.com/{k}", 1, "rus18") for k in range(2)]
    rows += [(f"b{k}", 0, f"https://b.com/{k}", 1, "chn19") for k in range(5)]
    return make_corpus(rows)


def test_cross_campaign_entry_is_normalized_by_subset_sizes():
    histogram = np.zeros(NUM_BINS, dtype=np.int64)
    histogram[0] = 10
    courl_map = CoUrlMap(account_i=np.array(["a0"], dtype=object), account_j=np.array(["b3"], dtype=object),
                         counts=histogram[None])

    matrix = cross_campaign_matrix(courl_map, _matrix_corpus(), ["rus18", "chn19"])

    assert matrix.values[0][1] == pytest.approx(1.0)
    assert matrix.values[1][0] == 0.0


def test_cross_campaign_geometric_normalization():
    histogram = np.zeros(NUM_BINS, dtype=np.int64)
    histogram[0] = 10
    courl_map = CoUrlMap(account_i=np.array(["a0"], dtype=object), account_j=np.array(["b3"], dtype=object),
                         counts=histogram[None])

    matrix = cross_campaign_matrix(courl_map, _matrix_corpus(), ["rus18", "chn19"], normalization="geometric")

    assert matrix.values[0][1] == pytest.approx(10 / math.sqrt(10))


def test_near_simultaneous_flag_ignores_later_bins():
    histogram = np.zeros(NUM_BINS, dtype=np.int64)
    histogram[1:] = 3
    courl_map = CoUrlMap(account_i=np.array(["a0"], dtype=object), account_j=np.array(["b3"], dtype=object),
                         counts=histogram[None])

    matrix = cross_campaign_matrix(courl_map, _matrix_corpus(), ["rus18", "chn19"], near_simultaneous_only=True)

    assert all(value == 0.0 for row in matrix.values for value in row)


def test_empty_campaign_is_flagged():
    matrix = cross_campaign_matrix(CoUrlMap.empty(), _matrix_corpus(), ["rus18", "iran19"])

    assert matrix.values[0][1] == 0.0
    assert matrix.empty[0][1]
    assert not matrix.empty[0][0]


def test_courl_series_has_one_row_per_campaign_and_tau(clique_corpus):
    series = campaign_courl_series(compute_courls(clique_corpus), clique_corpus)

    assert len(series) == len(clique_corpus.campaigns) * NUM_BINS
    rus = series.loc[series["campaign"] == "rus18"]
    assert rus["count"].sum() == 10
    assert set(rus["wave"]) == {"earlier"}
