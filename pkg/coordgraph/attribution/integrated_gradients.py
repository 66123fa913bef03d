import copy
import logging
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
import torch
from captum.attr import IntegratedGradients
from torch import Tensor, nn
from torch_geometric.utils import k_hop_subgraph

from coordgraph.exceptions import DegenerateDataError, UnsupportedModelError
from coordgraph.model.attribution_report import AttributionReport
from coordgraph.model.ig_config import IGConfig
from coordgraph.model.model_inputs import ModelInputs
from coordgraph.model.neutral_baseline import NeutralBaseline
from coordgraph.model.trained_model import TrainedModel
from coordgraph.models.predictor import check_layout, predict_probabilities, to_tensors

log = logging.getLogger(__name__)

NEUTRAL_PREDICTION = 0.5
# Float slack so that bands like 0.1 + 0.05 + 0.05 still reach max_band.
BAND_EPSILON = 1e-9


def empirical_baseline(model: TrainedModel, inputs: ModelInputs, config: IGConfig,
                       account_ids: Optional[Sequence[str]] = None) -> NeutralBaseline:
    """
    x' is the mean input over accounts with |F(x) - 0.5| <= band. The band starts at
    config.neutral_band and widens by config.band_step up to config.max_band.
    """
    _require_differentiable(model)
    rows = inputs.rows_of(list(account_ids)) if account_ids is not None else np.arange(len(inputs.account_ids))
    probabilities = predict_probabilities(model, inputs)[rows]
    distance = np.abs(probabilities - NEUTRAL_PREDICTION)

    band = config.neutral_band
    while not (distance <= band + BAND_EPSILON).any():
        if band + config.band_step > config.max_band + BAND_EPSILON:
            raise DegenerateDataError(f"No prediction within {config.max_band} of neutral; "
                                      f"closest is {probabilities[np.argmin(distance)]:.4f}")
        band += config.band_step
        log.warning("Neutral band empty, widened to +-%.2f.", band)

    in_band = rows[distance <= band + BAND_EPSILON]
    vector = inputs.features[in_band].mean(axis=0)
    network, dtype = _double_network(model)
    x, edge_index, edge_vectors = to_tensors(inputs, dtype)
    baseline = torch.as_tensor(vector, dtype=dtype)

    with torch.no_grad():
        if model.kind.uses_graph:
            # Graph models see x' at one node at a time, neighbors at their actual features.
            values = [_node_forward(network, x, edge_index, edge_vectors, int(row))(baseline[None])
                      for row in in_band]
            prediction = float(torch.sigmoid(torch.cat(values)).mean())
        else:
            prediction = float(torch.sigmoid(network(baseline[None]))[0])

    log.info("Empirical baseline built.")
    log.info("|-Accounts in band: %d", len(in_band))
    log.info("|-Band: +-%.2f", band)
    log.info("|-F(x'): %.4f", prediction)
    return NeutralBaseline(vector=vector, prediction=prediction, band=band,
                           account_ids=[inputs.account_ids[r] for r in in_band])


def integrated_gradients(model: TrainedModel, inputs: ModelInputs, account_ids: Sequence[str],
                         baseline: np.ndarray, config: IGConfig, steps: Optional[int] = None
                         ) -> Tuple[np.ndarray, np.ndarray]:
    """
    Signed IG per account and input column along the straight path x' -> x, in double
    precision with dropout off. For graph models only the target node's features move;
    the graph and the neighbors' features stay at their actual values.

    Returns the attributions and the per-account completeness residual
    |sum_i IG_i - (F(x) - F(x'))|.
    """
    _require_differentiable(model)
    check_layout(model, inputs)
    steps = steps or config.steps
    network, dtype = _double_network(model)
    x, edge_index, edge_vectors = to_tensors(inputs, dtype)
    baseline_tensor = torch.as_tensor(np.asarray(baseline), dtype=dtype)[None]
    rows = inputs.rows_of(list(account_ids))

    attributions = np.zeros((len(rows), x.size(1)), dtype=np.float64)
    residuals = np.zeros(len(rows), dtype=np.float64)
    if not len(rows):
        return attributions, residuals

    if model.kind.uses_graph:
        for k, row in enumerate(rows):
            forward = _target(_node_forward(network, x, edge_index, edge_vectors, int(row)), config)
            attributions[k:k + 1], residuals[k:k + 1] = _attribute(forward, x[row][None], baseline_tensor,
                                                                   steps, config)
    else:
        forward = _target(network, config)
        batch = x[torch.as_tensor(rows)]
        attributions, residuals = _attribute(forward, batch, baseline_tensor.expand(len(rows), -1), steps, config)
    return attributions, residuals


def completeness_convergence(model: TrainedModel, inputs: ModelInputs, account_ids: Sequence[str],
                             baseline: np.ndarray, config: IGConfig, doublings: int = 3) -> List[Tuple[int, float]]:
    """
    Largest completeness residual at config.steps, 2 * config.steps, ... The residual
    should shrink as the step count grows.
    """
    series = []
    for k in range(doublings + 1):
        steps = config.steps * 2 ** k
        _, residuals = integrated_gradients(model, inputs, account_ids, baseline, config, steps=steps)
        series.append((steps, float(residuals.max(initial=0.0))))
    shrinking = all(later <= earlier for (_, earlier), (_, later) in zip(series, series[1:]))
    if not shrinking:
        log.warning("Completeness residual does not shrink with the step count: %s", series)
    return series


def attribute_subset(model: TrainedModel, inputs: ModelInputs, subset: str, account_ids: Sequence[str],
                     baseline: NeutralBaseline, config: IGConfig) -> AttributionReport:
    attributions, residuals = integrated_gradients(model, inputs, account_ids, baseline.vector, config)
    if len(residuals):
        log.info("IG computed for subset %s.", subset)
        log.info("|-Accounts: %d", len(residuals))
        log.info("|-Max completeness residual: %.2e", residuals.max())
    return AttributionReport(kind=model.kind, subset=subset, account_ids=list(account_ids),
                             column_names=list(inputs.layout.column_names), attributions=attributions,
                             baseline=np.asarray(baseline.vector), baseline_prediction=baseline.prediction,
                             baseline_band=baseline.band, completeness_residuals=residuals, steps=config.steps)


def _require_differentiable(model: TrainedModel) -> None:
    if not model.kind.is_deep:
        raise UnsupportedModelError(f"Integrated gradients need a differentiable model, got {model.kind.value}")


def _double_network(model: TrainedModel) -> Tuple[nn.Module, torch.dtype]:
    network = copy.deepcopy(model.estimator).double()
    network.eval()
    return network, torch.float64


def _target(forward: Callable[[Tensor], Tensor], config: IGConfig) -> Callable[[Tensor], Tensor]:
    if config.target == "logit":
        return forward
    return lambda z: torch.sigmoid(forward(z))


def _node_forward(network: nn.Module, x: Tensor, edge_index: Tensor,
                  edge_vectors: Optional[Tensor], row: int) -> Callable[[Tensor], Tensor]:
    """
    Logit of node `row` as a function of its own feature vector, evaluated on its
    receptive field. One hop beyond the layer count keeps every degree in the
    normalization equal to its full-graph value.
    """
    hops = len(network.layers) + 1
    subset, sub_edge_index, mapping, edge_mask = k_hop_subgraph(row, hops, edge_index, relabel_nodes=True,
                                                                num_nodes=x.size(0))
    sub_x = x[subset]
    sub_vectors = edge_vectors[edge_mask] if edge_vectors is not None else None
    target = int(mapping[0])

    def forward(z: Tensor) -> Tensor:
        outputs = []
        for features in z:
            node_x = torch.cat([sub_x[:target], features[None], sub_x[target + 1:]])
            outputs.append(network(node_x, sub_edge_index, sub_vectors)[target])
        return torch.stack(outputs)

    return forward


def _attribute(forward: Callable[[Tensor], Tensor], x: Tensor, baseline: Tensor, steps: int,
               config: IGConfig) -> Tuple[np.ndarray, np.ndarray]:
    ig = IntegratedGradients(forward)
    attributions = ig.attribute(x, baselines=baseline, n_steps=steps, method=config.captum_method,
                                internal_batch_size=config.internal_batch_size)
    with torch.no_grad():
        difference = forward(x) - forward(baseline)
    residuals = (attributions.sum(dim=1) - difference).abs()
    return attributions.detach().numpy(), residuals.detach().numpy()
