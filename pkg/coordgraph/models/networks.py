from typing import List, Optional

import torch
import torch.nn.functional as F
from torch import Tensor, nn
from torch_geometric.utils import add_self_loops

from coordgraph.model.model_config import ModelConfig, ModelKind
from coordgraph.models.layers import DeepMessage, GCNLayer, ShallowMessage, get_activation

EDGE_TRANSFORMS = {
    "raw": lambda e: e,
    "log1p": torch.log1p,
}


class MLPNet(nn.Module):
    """
    Hidden affine layers with activation and dropout, then one logit per row.
    """

    def __init__(self, input_width: int, config: ModelConfig):
        super().__init__()
        widths = [input_width] + list(config.hidden_widths)
        self.hidden = nn.ModuleList(nn.Linear(a, b) for a, b in zip(widths[:-1], widths[1:]))
        self.output = nn.Linear(widths[-1], 1)
        self.activation = get_activation(config.hidden_activation)
        self.dropout = config.dropout_hidden

    def forward(self, x: Tensor, edge_index: Optional[Tensor] = None,
                edge_vectors: Optional[Tensor] = None) -> Tensor:
        h = x
        for layer in self.hidden:
            h = F.dropout(self.activation(layer(h)), p=self.dropout, training=self.training)
        return self.output(h).view(-1)


class GCNNet(nn.Module):
    """
    GCN layers (optionally scaled by per-layer edge messages) followed by a linear
    logit head. Messages: None for GCN, shallow for MP_GCN_S, deep for MP_GCN.
    """

    def __init__(self, input_width: int, config: ModelConfig, kind: ModelKind = ModelKind.GCN):
        super().__init__()
        widths = [input_width] + list(config.hidden_widths)
        self.layers = nn.ModuleList(GCNLayer(a, b, config.hidden_activation)
                                    for a, b in zip(widths[:-1], widths[1:]))
        self.messages: Optional[nn.ModuleList] = None
        if kind == ModelKind.MP_GCN_S:
            self.messages = nn.ModuleList(ShallowMessage(config.message_activation, config.dropout_message)
                                          for _ in self.layers)
        elif kind == ModelKind.MP_GCN:
            self.messages = nn.ModuleList(DeepMessage(config.message_depth, config.message_width,
                                                      config.message_activation, config.dropout_message)
                                          for _ in self.layers)
        self.output = nn.Linear(widths[-1], 1)
        self.dropout = config.dropout_hidden
        self.self_loops = config.add_self_loops
        self.edge_transform = EDGE_TRANSFORMS[config.edge_transform]

    def forward(self, x: Tensor, edge_index: Tensor, edge_vectors: Optional[Tensor] = None) -> Tensor:
        num_edges = edge_index.size(1)
        if self.self_loops:
            edge_index, _ = add_self_loops(edge_index, num_nodes=x.size(0))
        if self.messages is not None:
            if edge_vectors is None:
                raise ValueError("Message-passing models need co-URL edge vectors")
            edge_vectors = self.edge_transform(edge_vectors)

        h = x
        for k, layer in enumerate(self.layers):
            messages = None
            if self.messages is not None:
                messages = self.messages[k](edge_vectors)
                if self.self_loops:
                    # Self loops carry no co-URL vector and pass the node state unscaled.
                    loops = torch.ones(edge_index.size(1) - num_edges, dtype=messages.dtype, device=messages.device)
                    messages = torch.cat([messages, loops])
            h = F.dropout(layer(h, edge_index, messages), p=self.dropout, training=self.training)
        return self.output(h).view(-1)


def build_network(kind: ModelKind, input_width: int, config: ModelConfig) -> nn.Module:
    """
    Seeded construction with Glorot-uniform weights and zero biases.
    """
    if not kind.is_deep:
        raise ValueError(f"{kind.value} is not a neural model")

    torch.manual_seed(config.seed)
    network = MLPNet(input_width, config) if kind == ModelKind.MLP else GCNNet(input_width, config, kind)
    for name, parameter in network.named_parameters():
        if parameter.dim() >= 2:
            nn.init.xavier_uniform_(parameter)
        elif name.endswith("bias"):
            nn.init.zeros_(parameter)
    return network


def parameter_count(network: nn.Module) -> int:
    return sum(p.numel() for p in network.parameters())


def hidden_widths_of(network: nn.Module) -> List[int]:
    layers = network.hidden if isinstance(network, MLPNet) else [layer.linear for layer in network.layers]
    return [layer.out_features for layer in layers]
