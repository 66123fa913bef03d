from typing import Callable, Optional, Sequence, Tuple

import torch
import torch.nn.functional as F
from torch import Tensor, nn
from torch_geometric.nn import MessagePassing
from torch_geometric.utils import degree

from coordgraph.model.courl_map import NUM_BINS

Activation = Callable[[Tensor], Tensor]


def _identity(tensor: Tensor) -> Tensor:
    return tensor


ACTIVATIONS = {
    "relu": torch.relu,
    "sigmoid": torch.sigmoid,
    "tanh": torch.tanh,
    "identity": _identity,
}


def get_activation(name: str) -> Activation:
    if name not in ACTIVATIONS:
        raise ValueError(f"Unknown activation {name!r}; expected one of {sorted(ACTIVATIONS)}")
    return ACTIVATIONS[name]


class NormalizedAggregation(MessagePassing):
    """
    out_i = sum over edges (j -> i) of weight_ij * h_j.
    """

    def __init__(self):
        super().__init__(aggr="add")

    def forward(self, h: Tensor, edge_index: Tensor, weight: Tensor) -> Tensor:
        return self.propagate(edge_index, x=h, weight=weight, size=(h.size(0), h.size(0)))

    def message(self, x_j: Tensor, weight: Tensor) -> Tensor:
        return weight.view(-1, 1) * x_j


_aggregation = NormalizedAggregation()


def symmetric_norm(edge_index: Tensor, num_nodes: int, dtype: torch.dtype) -> Tensor:
    """
    1 / sqrt(d_i d_j) per edge; nodes of degree zero contribute nothing.
    """
    source, target = edge_index
    deg = degree(target, num_nodes, dtype=dtype)
    inv_sqrt = deg.pow(-0.5)
    inv_sqrt = torch.where(torch.isinf(inv_sqrt), torch.zeros_like(inv_sqrt), inv_sqrt)
    return inv_sqrt[source] * inv_sqrt[target]


def mp_aggregate(edge_index: Tensor, h: Tensor, messages: Optional[Tensor] = None) -> Tensor:
    """
    sum_j m_ij / sqrt(d_i d_j) * h_j. Without messages this is the plain GCN aggregation;
    unit messages give the same bits since norm * 1.0 == norm.
    """
    weight = symmetric_norm(edge_index, h.size(0), h.dtype)
    if messages is not None:
        if messages.numel() != edge_index.size(1):
            raise ValueError(f"Expected one message per edge ({edge_index.size(1)}), got {messages.numel()}")
        weight = weight * messages.view(-1)
    return _aggregation(h, edge_index, weight)


def gcn_layer(edge_index: Tensor, h: Tensor, weight: Tensor, bias: Optional[Tensor] = None,
              activation: Activation = torch.relu, messages: Optional[Tensor] = None) -> Tensor:
    """
    Affine transform, normalized neighbor aggregation, then the non-linearity.
    """
    if h.size(-1) != weight.size(1):
        raise ValueError(f"Layer expects {weight.size(1)} input features, got {h.size(-1)}")
    return activation(mp_aggregate(edge_index, F.linear(h, weight, bias), messages))


def message_shallow(edge_vectors: Tensor, weight: Tensor, activation: Activation = torch.sigmoid) -> Tensor:
    """
    m_ij = sigma(sum_tau w_tau e_ij,tau), one scalar per edge.
    """
    return activation(edge_vectors @ weight.view(-1))


def message_deep(edge_vectors: Tensor, layers: Sequence[Tuple[Tensor, Optional[Tensor]]],
                 activation: Activation = torch.sigmoid) -> Tensor:
    """
    Perceptron over the co-URL vector: a^(0) = e_ij, a^(l+1) = sigma(W a^(l) + b). The
    last layer has one output unit.
    """
    hidden = edge_vectors
    for weight, bias in layers:
        hidden = activation(F.linear(hidden, weight, bias))
    return hidden.view(-1)


class GCNLayer(nn.Module):
    def __init__(self, in_features: int, out_features: int, activation: str = "relu"):
        super().__init__()
        self.linear = nn.Linear(in_features, out_features)
        self.activation = get_activation(activation)

    def forward(self, h: Tensor, edge_index: Tensor, messages: Optional[Tensor] = None) -> Tensor:
        return gcn_layer(edge_index, h, self.linear.weight, self.linear.bias, self.activation, messages)


class ShallowMessage(nn.Module):
    def __init__(self, activation: str = "sigmoid", dropout: float = 0.2):
        super().__init__()
        self.weight = nn.Parameter(torch.empty(1, NUM_BINS))
        self.activation = get_activation(activation)
        self.dropout = dropout

    def forward(self, edge_vectors: Tensor) -> Tensor:
        messages = message_shallow(edge_vectors, self.weight, self.activation)
        return F.dropout(messages, p=self.dropout, training=self.training)


class DeepMessage(nn.Module):
    def __init__(self, depth: int = 2, width: int = 32, activation: str = "sigmoid", dropout: float = 0.2):
        super().__init__()
        widths = [NUM_BINS] + [width] * depth + [1]
        self.layers = nn.ModuleList(nn.Linear(a, b) for a, b in zip(widths[:-1], widths[1:]))
        self.activation = get_activation(activation)
        self.dropout = dropout

    def forward(self, edge_vectors: Tensor) -> Tensor:
        messages = message_deep(edge_vectors, [(layer.weight, layer.bias) for layer in self.layers],
                                self.activation)
        return F.dropout(messages, p=self.dropout, training=self.training)
