import itertools
import logging
from typing import Any, Callable, Dict, Iterable, Tuple

import numpy as np
from sklearn.ensemble import RandomForestClassifier
from sklearn.linear_model import LogisticRegression
from sklearn.metrics import f1_score

from coordgraph.exceptions import DegenerateDataError
from coordgraph.model.model_config import ModelConfig, ModelKind
from coordgraph.model.model_inputs import ModelInputs
from coordgraph.model.trained_model import TrainedModel

log = logging.getLogger(__name__)

LOGREG_MAX_ITERATIONS = 5000


def train_logreg(inputs: ModelInputs, train_rows: np.ndarray, val_rows: np.ndarray,
                 config: ModelConfig) -> TrainedModel:
    """
    L2-regularized logistic regression; the inverse regularization strength C is
    chosen from the config grid by validation F1.
    """

    def fit(params: Dict[str, Any]):
        return LogisticRegression(C=params["C"], max_iter=LOGREG_MAX_ITERATIONS, random_state=config.seed)

    grid = [{"C": c} for c in config.logreg_c_grid]
    return _grid_search(ModelKind.LR, inputs, train_rows, val_rows, config, grid, fit)


def train_random_forest(inputs: ModelInputs, train_rows: np.ndarray, val_rows: np.ndarray,
                        config: ModelConfig, n_jobs: int = 1) -> TrainedModel:
    """
    Gini-split bagged CART ensemble over the grid of tree count, max depth (0 is
    unlimited) and min leaf size. Bootstrap draws are seeded.
    """

    def fit(params: Dict[str, Any]):
        return RandomForestClassifier(n_estimators=params["n_estimators"],
                                      max_depth=params["max_depth"] or None,
                                      min_samples_leaf=params["min_samples_leaf"],
                                      criterion="gini",
                                      bootstrap=True,
                                      random_state=config.seed,
                                      n_jobs=n_jobs)

    grid = [{"n_estimators": trees, "max_depth": depth, "min_samples_leaf": leaf}
            for trees, depth, leaf in itertools.product(config.rf_trees_grid, config.rf_max_depth_grid,
                                                        config.rf_min_leaf_grid)]
    return _grid_search(ModelKind.RF, inputs, train_rows, val_rows, config, grid, fit)


def _grid_search(kind: ModelKind, inputs: ModelInputs, train_rows: np.ndarray, val_rows: np.ndarray,
                 config: ModelConfig, grid: Iterable[Dict[str, Any]],
                 fit: Callable[[Dict[str, Any]], Any]) -> TrainedModel:
    x_train, y_train = _rows(inputs, train_rows)
    if np.unique(y_train).size < 2:
        raise DegenerateDataError(f"{kind.value}: training labels contain a single class")
    x_val, y_val = _rows(inputs, val_rows) if len(val_rows) else (x_train, y_train)

    best_estimator, best_params, best_f1 = None, None, -1.0
    for params in grid:
        estimator = fit(params).fit(x_train, y_train)
        val_f1 = float(f1_score(y_val, estimator.predict(x_val), zero_division=0))
        log.debug("%s grid point %s: val F1 %.4f", kind.value, params, val_f1)
        # Strict improvement keeps the first grid point on ties.
        if val_f1 > best_f1:
            best_estimator, best_params, best_f1 = estimator, params, val_f1

    if best_estimator is None:
        raise ValueError(f"{kind.value}: empty hyperparameter grid")

    log.info("%s grid search finished.", kind.value)
    log.info("|-Selected: %s", best_params)
    log.info("|-F1(val): %.2f", 100 * best_f1)
    return TrainedModel(kind=kind, layout=inputs.layout, config=config, seed=config.seed,
                        estimator=best_estimator, selected_hyperparameters=dict(best_params),
                        best_val_f1=best_f1)


def _rows(inputs: ModelInputs, rows: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    rows = np.asarray(rows, dtype=np.int64)
    return inputs.features[rows], inputs.labels[rows].astype(np.int64)
