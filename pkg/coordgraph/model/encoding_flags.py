from __future__ import annotations

from itertools import product
from typing import List

from pydantic import BaseModel

PRESENT_SYMBOL = "†"
ABSENT_SYMBOL = "∗"

NODE2VEC_DIM = 128
LAPLACIAN_DIM = 50
RWPE_DIM = 50
NETWORK_FEATURE_NAMES = ["degree", "clustering", "betweenness", "pagerank", "hits"]
NETWORK_FEATURES_DIM = len(NETWORK_FEATURE_NAMES)

BLOCK_ORDER = ["node2vec", "laplacian", "rwpe", "network_features"]
BLOCK_DIMS = {
    "node2vec": NODE2VEC_DIM,
    "laplacian": LAPLACIAN_DIM,
    "rwpe": RWPE_DIM,
    "network_features": NETWORK_FEATURES_DIM,
}


class EncodingFlags(BaseModel):
    node2vec: bool = True
    laplacian: bool = True
    rwpe: bool = True
    network_features: bool = True

    @property
    def enabled_blocks(self) -> List[str]:
        return [name for name in BLOCK_ORDER if getattr(self, name)]

    @property
    def width(self) -> int:
        return sum(BLOCK_DIMS[name] for name in self.enabled_blocks)

    def to_symbols(self) -> str:
        return "".join(PRESENT_SYMBOL if getattr(self, name) else ABSENT_SYMBOL for name in BLOCK_ORDER)

    @classmethod
    def from_symbols(cls, symbols: str) -> EncodingFlags:
        # Accepts the typographic symbols as well as "+"/"-" and "1"/"0".
        normalized = symbols.replace("*", ABSENT_SYMBOL)
        if len(normalized) != len(BLOCK_ORDER):
            raise ValueError(f"Encoding flags must have {len(BLOCK_ORDER)} symbols, got: {symbols!r}")

        values = {}
        for name, symbol in zip(BLOCK_ORDER, normalized):
            if symbol in (PRESENT_SYMBOL, "+", "1"):
                values[name] = True
            elif symbol in (ABSENT_SYMBOL, "-", "0"):
                values[name] = False
            else:
                raise ValueError(f"Unknown encoding flag symbol {symbol!r} in {symbols!r}")
        return cls(**values)

    @classmethod
    def all_combinations(cls) -> List[EncodingFlags]:
        return [cls(**dict(zip(BLOCK_ORDER, bits))) for bits in product([True, False], repeat=len(BLOCK_ORDER))]
