"""Run parameters shared by the CLI and the scripts."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import SchemaError
from .frobenius import DET_BOUND
from .semifree import MAX_GENERATORS


@dataclass(frozen=True)
class RunConfig:
    cutoff: int = 8  # top degree of the computation window
    seed: int = 0  # only used by the randomized determinant fallback
    det_bound: int = DET_BOUND  # largest Gram size expanded symbolically
    max_generators: int = MAX_GENERATORS

    def __post_init__(self):
        if self.cutoff < 0:
            raise SchemaError("must be nonnegative", "max_degree")
        if not 0 <= self.seed < 2**64:
            raise SchemaError("must fit in 64 bits", "seed")
        if self.det_bound < 0 or self.max_generators < 1:
            raise SchemaError("bounds must be positive", "config")
