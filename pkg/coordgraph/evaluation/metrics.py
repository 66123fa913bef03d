import logging
import math
from typing import Dict, Optional, Sequence

import numpy as np
from sklearn.metrics import f1_score, roc_auc_score

from coordgraph.exceptions import DegenerateDataError
from coordgraph.model.aggregate_result import AggregateResult

log = logging.getLogger(__name__)


def binary_metrics(probabilities: np.ndarray, labels: np.ndarray, threshold: float = 0.5) -> Dict[str, float]:
    """
    F1 at the threshold (probability >= threshold is positive) and ROC-AUC with the
    midrank convention for ties, both in percent.
    """
    probabilities = np.asarray(probabilities, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    if probabilities.shape != labels.shape:
        raise ValueError(f"{probabilities.shape[0]} predictions for {labels.shape[0]} labels")
    if np.unique(labels).size < 2:
        raise DegenerateDataError("ROC-AUC is undefined for single-class labels")

    predicted = (probabilities >= threshold).astype(np.int64)
    return {
        "f1": 100.0 * float(f1_score(labels, predicted, zero_division=0)),
        "auc": 100.0 * float(roc_auc_score(labels, probabilities)),
    }


def f1_percent(probabilities: np.ndarray, labels: np.ndarray, threshold: float = 0.5) -> float:
    predicted = (np.asarray(probabilities) >= threshold).astype(np.int64)
    return 100.0 * float(f1_score(np.asarray(labels, dtype=np.int64), predicted, zero_division=0))


def harmonic_aggregate(values: Sequence[float], sigmas: Optional[Sequence[float]] = None,
                       subtasks: Optional[Sequence[str]] = None, metric: str = "") -> AggregateResult:
    """
    x = n / sum(1 / x_i) with sigma_x^2 = (x^2 / n)^2 * sum((sigma_i / x_i^2)^2),
    correlations between subtasks neglected.
    """
    values = np.asarray(values, dtype=np.float64)
    sigmas = np.zeros_like(values) if sigmas is None else np.asarray(sigmas, dtype=np.float64)
    if values.size == 0:
        raise ValueError("Harmonic mean of an empty set")
    if sigmas.shape != values.shape:
        raise ValueError(f"{values.size} values but {sigmas.size} sigmas")
    if (values <= 0).any():
        raise DegenerateDataError(f"Harmonic mean is undefined for non-positive values: {values.tolist()}")

    n = values.size
    mean = n / np.sum(1.0 / values)
    sigma = (mean ** 2 / n) * math.sqrt(float(np.sum((sigmas / values ** 2) ** 2)))
    return AggregateResult(metric=metric, value=float(mean), sigma=float(sigma),
                           subtasks=list(subtasks or []), inputs=values.tolist())


def seed_statistics(values: Sequence[float]) -> tuple[float, float]:
    """
    Mean and sample standard deviation; a single seed has sigma 0.
    """
    values = np.asarray(values, dtype=np.float64)
    sigma = float(np.std(values, ddof=1)) if values.size > 1 else 0.0
    return float(np.mean(values)), sigma
