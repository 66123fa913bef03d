import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from coordgraph import file_utils
from coordgraph.exceptions import LayoutMismatchError
from coordgraph.model.attribution_report import (AttributionReport, AttributionSummary, BaselineSummary,
                                                 DomainAttribution)
from coordgraph.model.corpus import Corpus
from coordgraph.model.encoding_flags import NETWORK_FEATURE_NAMES
from coordgraph.model.input_layout import InputLayout
from coordgraph.model.neutral_baseline import NeutralBaseline
from coordgraph.model.split_name import SplitName

log = logging.getLogger(__name__)

GROUP_LABELS = {
    "domains": "domains",
    "node2vec": "node2vec",
    "laplacian": "LE",
    "rwpe": "RWPE",
    "network_features": "NF",
}
SUBSETS = ["val", "test", "baseline"]


def layout_grouping(layout: InputLayout) -> Dict[str, List[int]]:
    """
    Partition of the layout's columns into the content block and each graph block.
    """
    grouping: Dict[str, List[int]] = {"domains": layout.content_columns()} if layout.retained_domains else {}
    offset = len(layout.retained_domains)
    for name in layout.flags.enabled_blocks:
        prefix = "nf:" if name == "network_features" else f"{name}:"
        columns = [k for k, column in enumerate(layout.column_names) if column.startswith(prefix)]
        grouping[GROUP_LABELS[name]] = columns
        offset += len(columns)
    if offset != layout.width:
        raise LayoutMismatchError(f"Layout groups cover {offset} of {layout.width} columns")
    return grouping


def network_feature_grouping(layout: InputLayout) -> Dict[str, List[int]]:
    if not layout.flags.network_features:
        return {}
    return {f"NF:{name}": [layout.column_names.index(f"nf:{name}")] for name in NETWORK_FEATURE_NAMES}


def grouped_attribution(attributions: np.ndarray, grouping: Dict[str, List[int]]) -> Dict[str, float]:
    """
    Per account, the sum of |IG| over each group's columns; averaged over accounts.
    The grouping must partition the columns.
    """
    attributions = np.atleast_2d(np.asarray(attributions, dtype=np.float64))
    width = attributions.shape[1]
    covered = sorted(c for columns in grouping.values() for c in columns)
    if covered != list(range(width)):
        raise LayoutMismatchError(f"Grouping is not a partition of the {width} attribution columns")

    magnitude = np.abs(attributions)
    if magnitude.shape[0] == 0:
        return {name: 0.0 for name in grouping}
    return {name: float(magnitude[:, columns].sum(axis=1).mean()) for name, columns in grouping.items()}


def report_groups(report: AttributionReport, layout: InputLayout) -> Dict[str, float]:
    """
    Block-level values plus the five network-feature quantities on their own.
    """
    groups = grouped_attribution(report.attributions, layout_grouping(layout))
    magnitude = np.abs(np.atleast_2d(report.attributions))
    for name, columns in network_feature_grouping(layout).items():
        groups[name] = float(magnitude[:, columns].sum(axis=1).mean()) if len(magnitude) else 0.0
    return groups


def domain_level_attribution(attributions: np.ndarray, retained_domains: Sequence[str],
                             top_n: Optional[int] = None) -> List[Tuple[str, float]]:
    """
    Mean signed IG per domain, ranked by magnitude (ties by domain name).
    """
    attributions = np.atleast_2d(np.asarray(attributions, dtype=np.float64))
    domains = list(retained_domains)
    if not domains:
        return []
    means = attributions[:, :len(domains)].mean(axis=0) if len(attributions) else np.zeros(len(domains))
    ranked = sorted(zip(domains, means.tolist()), key=lambda item: (-abs(item[1]), item[0]))
    return ranked[:top_n] if top_n is not None else ranked


def attribution_subsets(corpus: Corpus, account_ids: Sequence[str]) -> Dict[str, List[str]]:
    """
    val: every validation account. test: IO accounts of the test split. baseline:
    baseline accounts of the test split.
    """
    account_ids = list(account_ids)
    labels = dict(zip(account_ids, corpus.labels(account_ids).tolist()))
    split_of = corpus.split_assignment
    return {
        "val": [a for a in account_ids if split_of.get(a) == SplitName.VAL],
        "test": [a for a in account_ids if split_of.get(a) == SplitName.TEST and labels[a] == 1],
        "baseline": [a for a in account_ids if split_of.get(a) == SplitName.TEST and labels[a] == 0],
    }


def summarize_reports(task: str, seed: int, reports: Dict[str, AttributionReport], layout: InputLayout,
                      baseline: NeutralBaseline, top_domains: int) -> AttributionSummary:
    first = next(iter(reports.values()))
    return AttributionSummary(
        task=task,
        seed=seed,
        kind=first.kind,
        steps=first.steps,
        baseline=BaselineSummary(prediction=baseline.prediction, band=baseline.band,
                                 accounts_in_band=len(baseline.account_ids)),
        groups={subset: report_groups(report, layout) for subset, report in reports.items()},
        domains={subset: [DomainAttribution(domain=d, ig=v) for d, v in
                          domain_level_attribution(report.attributions, layout.retained_domains, top_domains)]
                 for subset, report in reports.items()},
        completeness_residuals={subset: _residual_stats(report.completeness_residuals)
                                for subset, report in reports.items()},
    )


def aggregate_subtask_attributions(summaries: Sequence[AttributionSummary]) -> pd.DataFrame:
    """
    Arithmetic mean of every grouped value over subtasks, one row per group and one
    column per subset.
    """
    rows = [{"task": s.task, "subset": subset, "group": group, "ig": value}
            for s in summaries for subset, groups in s.groups.items() for group, value in groups.items()]
    if not rows:
        return pd.DataFrame(columns=["group"] + SUBSETS)
    frame = pd.DataFrame(rows)
    table = frame.pivot_table(index="group", columns="subset", values="ig", aggfunc="mean", sort=False)
    table = table.reindex(columns=[c for c in SUBSETS if c in table.columns])
    return table.reset_index()


def groups_frame(summary: AttributionSummary) -> pd.DataFrame:
    rows = [{"group": group, **{subset: summary.groups[subset].get(group, np.nan) for subset in summary.groups}}
            for group in next(iter(summary.groups.values()), {})]
    return pd.DataFrame(rows, columns=["group"] + list(summary.groups))


def domains_frame(summary: AttributionSummary) -> pd.DataFrame:
    rows = [{"subset": subset, "rank": rank, "domain": item.domain, "ig": item.ig}
            for subset, items in summary.domains.items() for rank, item in enumerate(items, start=1)]
    return pd.DataFrame(rows, columns=["subset", "rank", "domain", "ig"])


def write_attribution_tables(summary: AttributionSummary, groups_path, domains_path) -> None:
    file_utils.write_csv_atomically(groups_path, groups_frame(summary))
    file_utils.write_csv_atomically(domains_path, domains_frame(summary))


def _residual_stats(residuals: np.ndarray) -> Dict[str, float]:
    if not len(residuals):
        return {"max": 0.0, "mean": 0.0}
    return {"max": float(np.max(residuals)), "mean": float(np.mean(residuals))}
