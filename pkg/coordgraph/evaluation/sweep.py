import logging
import math
from itertools import groupby
from typing import Dict, List, Optional, Sequence

import pandas as pd

from coordgraph.config.app_config import PipelineConfig
from coordgraph.evaluation.metrics import harmonic_aggregate
from coordgraph.evaluation.task_runner import TaskCache, run_task
from coordgraph.exceptions import CoordGraphError
from coordgraph.ingest.splits import get_task
from coordgraph.model.aggregate_result import AggregateResult
from coordgraph.model.corpus import Corpus
from coordgraph.model.courl_map import CoUrlMap
from coordgraph.model.metric_result import METRIC_NAMES, MetricResult
from coordgraph.model.model_config import ModelKind
from coordgraph.model.sweep_grid import SweepCell, SweepGrid

log = logging.getLogger(__name__)

RESULT_COLUMNS = ["task", "model", "gamma_max", "k_top", "metric", "value", "sigma"]


def aggregate_by_family(results: Sequence[MetricResult]) -> Dict[str, Dict[str, AggregateResult]]:
    """
    Harmonic aggregate of every metric over the subtasks of each family (A, B).
    """
    aggregates: Dict[str, Dict[str, AggregateResult]] = {}
    ordered = sorted(results, key=lambda r: (get_task(r.task).family, r.task))
    for family, members in groupby(ordered, key=lambda r: get_task(r.task).family):
        members = list(members)
        aggregates[family] = {
            metric: harmonic_aggregate([r.value(metric) for r in members], [r.sigma(metric) for r in members],
                                       [r.task for r in members], metric)
            for metric in METRIC_NAMES
        }
    return aggregates


def sweep(corpus: Corpus, courl_map: CoUrlMap, config: PipelineConfig, tasks: Optional[Sequence[str]] = None,
          gamma_values: Optional[Sequence[float]] = None, k_values: Optional[Sequence[int]] = None,
          kind: Optional[ModelKind] = None) -> SweepGrid:
    """
    Runs every task at every (gamma_max, k_top) cell and aggregates over subtasks. A
    failing cell is recorded with its error and the sweep moves on.
    """
    tasks = list(tasks or config.evaluation.tasks)
    gamma_values = list(config.sweep.gamma_values if gamma_values is None else gamma_values)
    k_values = list(config.sweep.k_values if k_values is None else k_values)
    kind = kind or config.sweep.model
    if not tasks or not gamma_values or not k_values:
        raise ValueError("Sweep needs at least one task, one gamma_max and one k_top value")

    cache: TaskCache = {}
    cells: List[SweepCell] = []
    for gamma_max in gamma_values:
        for k_top in k_values:
            censor = config.censor.model_copy(update={"gamma_max": gamma_max, "k_top": k_top})
            log.info("Sweep cell started: %s", censor.describe())
            try:
                results = [run_task(corpus, courl_map, task, kind, config, censor=censor, cache=cache)
                           for task in tasks]
                cells.append(SweepCell(gamma_max=gamma_max, k_top=k_top, results=results,
                                       aggregates=aggregate_by_family(results)))
            except (CoordGraphError, ValueError) as e:
                log.warning("Sweep cell failed (%s): %s", censor.describe(), e)
                cells.append(SweepCell(gamma_max=gamma_max, k_top=k_top, status="failed", message=str(e)))

    grid = SweepGrid(model=kind, tasks=tasks, gamma_values=gamma_values, k_values=k_values, cells=cells)
    log.info("Sweep finished.")
    log.info("|-Cells: %d", len(cells))
    log.info("|-Failed cells: %d", len(grid.failed_cells))
    return grid


def results_frame(results: Sequence[MetricResult],
                  aggregates: Optional[Dict[str, Dict[str, AggregateResult]]] = None) -> pd.DataFrame:
    """
    Long format: one row per (task, metric); aggregate rows use the family letter as task.
    """
    rows = []
    for result in results:
        for metric in METRIC_NAMES:
            rows.append({"task": result.task, "model": result.kind.value, "gamma_max": result.gamma_max,
                         "k_top": result.k_top, "metric": metric, "value": result.value(metric),
                         "sigma": result.sigma(metric)})
    if results:
        for family, metrics in (aggregates or {}).items():
            for metric, aggregate in metrics.items():
                rows.append({"task": family, "model": results[0].kind.value, "gamma_max": results[0].gamma_max,
                             "k_top": results[0].k_top, "metric": metric, "value": aggregate.value,
                             "sigma": aggregate.sigma})
    return pd.DataFrame(rows, columns=RESULT_COLUMNS)


def sweep_frame(grid: SweepGrid) -> pd.DataFrame:
    """
    One row per cell and metric of the family aggregates; failed cells keep a row with
    empty values so the grid stays complete.
    """
    rows = []
    for cell in grid.cells:
        if cell.status != "ok":
            rows.append({"task": "", "model": grid.model.value, "gamma_max": cell.gamma_max, "k_top": cell.k_top,
                         "metric": "", "value": math.nan, "sigma": math.nan, "status": cell.status})
            continue
        for family, metrics in cell.aggregates.items():
            for metric, aggregate in metrics.items():
                rows.append({"task": family, "model": grid.model.value, "gamma_max": cell.gamma_max,
                             "k_top": cell.k_top, "metric": metric, "value": aggregate.value,
                             "sigma": aggregate.sigma, "status": cell.status})
    return pd.DataFrame(rows, columns=RESULT_COLUMNS + ["status"])
