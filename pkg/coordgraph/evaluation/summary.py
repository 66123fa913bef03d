from itertools import groupby
from typing import List, Sequence

from coordgraph.evaluation.sweep import aggregate_by_family
from coordgraph.evaluation.task_runner import median_encoding
from coordgraph.ingest.splits import get_task
from coordgraph.model.encoding_flags import EncodingFlags
from coordgraph.model.metric_result import MetricResult
from coordgraph.model.table_summary import SummaryRow, TableSummary


def table_summary(results: Sequence[MetricResult], seeds: Sequence[int]) -> TableSummary:
    """
    Results-table layout: per model, its subtask rows followed by one harmonic
    aggregate row per family carrying the median encoding of its subtasks.
    """
    if not results:
        raise ValueError("No results to summarize")

    rows: List[SummaryRow] = []
    ordered = sorted(results, key=lambda r: (r.kind.value, get_task(r.task).family, r.task))
    for kind, members in groupby(ordered, key=lambda r: r.kind):
        members = list(members)
        for result in members:
            rows.append(SummaryRow(kind=kind, task=result.task, encoding=result.encoding,
                                   **{name: getattr(result, name) for name in _metric_fields()}))
        for family, aggregates in aggregate_by_family(members).items():
            family_members = [r for r in members if get_task(r.task).family == family]
            encoding = median_encoding([EncodingFlags.from_symbols(r.encoding) for r in family_members])
            values = {}
            for metric, aggregate in aggregates.items():
                values[metric] = aggregate.value
                values[f"{metric}_sigma"] = aggregate.sigma
            rows.append(SummaryRow(kind=kind, task=family, aggregate=True, encoding=encoding, **values))

    return TableSummary(gamma_max=results[0].gamma_max, k_top=results[0].k_top, seeds=list(seeds), rows=rows)


def _metric_fields() -> List[str]:
    return ["f1_val", "f1_val_sigma", "f1_test", "f1_test_sigma", "auc_test", "auc_test_sigma"]
