import math

import numpy as np
import pytest

from coordgraph.coordination.courl_builder import compute_courls
from coordgraph.evaluation import sweep as sweep_module
from coordgraph.evaluation.metrics import binary_metrics, harmonic_aggregate, seed_statistics
from coordgraph.evaluation.summary import table_summary
from coordgraph.evaluation.sweep import aggregate_by_family, results_frame, sweep, sweep_frame
from coordgraph.evaluation.task_runner import median_encoding, run_task
from coordgraph.exceptions import DegenerateDataError
from coordgraph.ingest.parser import parse_events
from coordgraph.model.encoding_flags import EncodingFlags
from coordgraph.model.metric_result import MetricResult, SeedMetrics
from coordgraph.model.model_config import ModelKind
from coordgraph.synth.generator import generate_scenario
from coordgraph.synth.scenarios import scenario


def _result(task: str, value: float, sigma: float = 0.0, encoding: str = "††††",
            kind: ModelKind = ModelKind.MLP) -> MetricResult:
    return MetricResult(task=task, kind=kind, gamma_max=0.54, k_top=2000, encoding=encoding,
                        f1_val=value, f1_val_sigma=sigma, f1_test=value, f1_test_sigma=sigma,
                        auc_test=value, auc_test_sigma=sigma,
                        per_seed=[SeedMetrics(seed=0, f1_val=value, f1_test=value, auc_test=value,
                                              encoding=encoding)])


@pytest.mark.parametrize("values, expected", [
    ((91.90, 92.63, 88.95), 91.13),
    ((96.72, 93.70, 93.69), 94.68),
])
def test_harmonic_aggregate_examples(values, expected):
    assert harmonic_aggregate(values).value == pytest.approx(expected, abs=0.01)


def test_harmonic_aggregate_of_equal_values():
    aggregate = harmonic_aggregate([80.0] * 4, [2.0] * 4)

    assert aggregate.value == pytest.approx(80.0)
    assert aggregate.sigma == pytest.approx(1.0)


def test_harmonic_aggregate_lies_between_min_and_mean():
    rng = np.random.default_rng(0)
    for _ in range(50):
        values = rng.uniform(1.0, 100.0, size=int(rng.integers(1, 7)))
        aggregate = harmonic_aggregate(values)
        assert values.min() - 1e-9 <= aggregate.value <= values.mean() + 1e-9


def test_harmonic_aggregate_refuses_non_positive_values():
    with pytest.raises(DegenerateDataError):
        harmonic_aggregate([90.0, 0.0, 80.0])


def test_binary_metrics_percent_scale():
    metrics = binary_metrics(np.array([0.9, 0.5, 0.2, 0.1]), np.array([1, 1, 0, 0]))

    assert metrics == {"f1": pytest.approx(100.0), "auc": pytest.approx(100.0)}


def test_auc_ties_use_midrank():
    metrics = binary_metrics(np.array([0.5, 0.5]), np.array([1, 0]))

    assert metrics["auc"] == pytest.approx(50.0)


def test_single_class_test_labels_are_degenerate():
    with pytest.raises(DegenerateDataError):
        binary_metrics(np.array([0.3, 0.7]), np.array([1, 1]))


def test_seed_statistics_use_sample_deviation():
    assert seed_statistics([90.0, 92.0, 94.0]) == (pytest.approx(92.0), pytest.approx(2.0))
    assert seed_statistics([90.0]) == (90.0, 0.0)


def test_median_encoding_by_block_majority():
    flags = [EncodingFlags.from_symbols(s) for s in ("††∗∗", "†∗∗†", "∗∗∗†")]

    assert median_encoding(flags) == "†∗∗†"
    assert median_encoding(flags[:2]) == "††∗†"


def test_aggregate_by_family_groups_subtasks():
    results = [_result("A1", 91.90), _result("A2", 92.63), _result("A3", 88.95), _result("B1", 96.72)]

    aggregates = aggregate_by_family(results)

    assert sorted(aggregates) == ["A", "B"]
    assert aggregates["A"]["f1_test"].value == pytest.approx(91.13, abs=0.01)
    assert aggregates["A"]["f1_test"].subtasks == ["A1", "A2", "A3"]
    assert aggregates["B"]["auc_test"].value == pytest.approx(96.72)


def test_results_frame_has_subtask_and_family_rows():
    results = [_result("A1", 90.0), _result("A2", 80.0)]

    frame = results_frame(results, aggregate_by_family(results))

    assert list(frame.columns) == ["task", "model", "gamma_max", "k_top", "metric", "value", "sigma"]
    assert len(frame) == 9
    assert set(frame.loc[frame["task"] == "A", "metric"]) == {"f1_val", "f1_test", "auc_test"}


def test_table_summary_appends_family_rows_per_model():
    results = [_result("A1", 90.0, encoding="††∗∗"), _result("A2", 80.0, encoding="†∗∗∗"),
               _result("A1", 70.0, kind=ModelKind.LR, encoding="∗∗∗∗")]

    summary = table_summary(results, seeds=[0, 1])

    assert [(row.kind.value, row.task, row.aggregate) for row in summary.rows] == [
        ("LR", "A1", False), ("LR", "A", True), ("MLP", "A1", False), ("MLP", "A2", False), ("MLP", "A", True)]
    assert summary.rows[-1].encoding == "††∗∗"
    assert summary.seeds == [0, 1]


def test_sweep_records_failed_cells(monkeypatch, mock_pipeline_config):
    def fake_run_task(corpus, courl_map, task, kind, config, censor=None, cache=None):
        if censor.gamma_max == 0.0:
            raise DegenerateDataError("no domains survive")
        return _result(task, 50.0 + censor.k_top / 100)

    monkeypatch.setattr(sweep_module, "run_task", fake_run_task)

    grid = sweep(None, None, mock_pipeline_config, tasks=["A1", "B1"], gamma_values=[0.0, math.inf],
                 k_values=[500, 1000])
    frame = sweep_frame(grid)

    assert len(grid.cells) == 4
    assert [c.status for c in grid.cells] == ["failed", "failed", "ok", "ok"]
    assert grid.failed_cells[0].message == "no domains survive"
    assert frame["value"].isna().sum() == 2
    family_a = frame.loc[(frame["k_top"] == 1000) & (frame["task"] == "A"), "value"]
    assert family_a.tolist() == pytest.approx([60.0] * 3)


def test_sweep_needs_a_grid(mock_pipeline_config):
    with pytest.raises(ValueError):
        sweep(None, None, mock_pipeline_config, tasks=["A1"], gamma_values=[], k_values=[500])


@pytest.mark.slow
def test_run_task_end_to_end_on_synthetic_operations(three_ops, mock_pipeline_config):
    corpus, courl_map, cache = three_ops
    config = _detection_config(mock_pipeline_config)
    config = config.model_copy(update={"censor": config.censor.model_copy(update={"k_top": 200})})

    result = run_task(corpus, courl_map, "A1", ModelKind.MLP, config, seeds=[0, 1], cache=cache)

    assert len(result.per_seed) == 2
    assert 0.0 <= result.f1_test <= 100.0
    assert result.auc_test > 50.0


@pytest.fixture(scope="module")
def three_ops():
    corpus, _ = parse_events(generate_scenario(scenario("three-ops", seed=7)).to_csv(index=False).encode())
    # Split and graph work shared by every run below; the graph settings never change.
    return corpus, compute_courls(corpus), {}


def _detection_config(config):
    return config.model_copy(update={
        "model": config.model.model_copy(update={"max_epochs": 200, "patience": 50, "learning_rate": 1e-2}),
        "node2vec": config.node2vec.model_copy(update={"walk_length": 20, "walks_per_node": 2, "epochs": 1}),
    })


def _family(three_ops, tasks, kind, config, gamma_max=0.54):
    corpus, courl_map, cache = three_ops
    censor = config.censor.model_copy(update={"gamma_max": gamma_max})
    return [run_task(corpus, courl_map, task, kind, config, censor=censor, flags=EncodingFlags(), seeds=[0],
                     cache=cache) for task in tasks]


@pytest.mark.slow
@pytest.mark.parametrize("kind", [ModelKind.MLP, ModelKind.GCN])
def test_censored_detectors_transfer_to_unseen_operations(three_ops, mock_pipeline_config, kind):
    config = _detection_config(mock_pipeline_config)

    results = _family(three_ops, ["B1", "B2", "B3"], kind, config)

    assert len(three_ops[0]) > 2000
    for result in results:
        assert result.auc_test >= 85.0, result.task


@pytest.mark.slow
def test_lifting_censorship_only_pays_off_in_sample(three_ops, mock_pipeline_config):
    config = _detection_config(mock_pipeline_config)

    def harmonic(results, metric):
        return harmonic_aggregate([getattr(r, metric) for r in results]).value

    censored_a = harmonic(_family(three_ops, ["A1", "A2", "A3"], ModelKind.MLP, config), "f1_test")
    open_a = harmonic(_family(three_ops, ["A1", "A2", "A3"], ModelKind.MLP, config, math.inf), "f1_test")
    censored_b = harmonic(_family(three_ops, ["B1", "B2", "B3"], ModelKind.MLP, config), "auc_test")
    open_b = harmonic(_family(three_ops, ["B1", "B2", "B3"], ModelKind.MLP, config, math.inf), "auc_test")

    # Dormant accounts of the trained-on operation are only visible through their IO domains.
    assert open_a > censored_a + 2.0
    # Another operation's IO domains never reach the vocabulary, so lifting censorship buys nothing there.
    assert open_b < censored_b + 3.0
    assert open_a - censored_a > open_b - censored_b + 2.0
