"""Per-module input transforms.

Every transform maps the *original* sample to the features seen by one
module; transforms are never chained. ``Precomputed`` covers the case where
the transformed features are already known and only need to be looked up by
row index.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import TransformError


class Transform:
    def output_dim(self, input_dim: int) -> int:
        raise NotImplementedError

    def apply(self, sample: np.ndarray, i: Optional[int] = None, lookup=None) -> np.ndarray:
        raise NotImplementedError

    def problems(self, input_dim: Optional[int]) -> list:
        return []


@dataclass(frozen=True)
class Identity(Transform):
    def output_dim(self, input_dim):
        return input_dim

    def apply(self, sample, i=None, lookup=None):
        return sample


@dataclass(frozen=True)
class ColumnSubset(Transform):
    indices: tuple

    def __init__(self, indices: Sequence[int]):
        object.__setattr__(self, "indices", tuple(int(j) for j in indices))

    def output_dim(self, input_dim):
        return len(self.indices)

    def apply(self, sample, i=None, lookup=None):
        return np.asarray(sample)[list(self.indices)]

    def problems(self, input_dim):
        out = []
        if not self.indices:
            out.append("column subset is empty")
        if input_dim is not None:
            bad = [j for j in self.indices if not 0 <= j < input_dim]
            if bad:
                out.append(f"column indices {bad} out of range for {input_dim} input features")
        return out


class Precomputed(Transform):
    """Row lookup into a matrix of already-transformed features.

    ``source`` optionally records where the matrix came from (a CSV path) so
    that a saved model can describe it.
    """

    def __init__(self, matrix, source: Optional[str] = None):
        self.matrix = np.asarray(matrix, dtype=float)
        if self.matrix.ndim != 2:
            raise TransformError(f"lookup matrix must be 2-d, got shape {self.matrix.shape}")
        self.source = source

    def output_dim(self, input_dim):
        return self.matrix.shape[1]

    def apply(self, sample, i=None, lookup=None):
        table = self.matrix if lookup is None else np.asarray(lookup, dtype=float)
        if i is None:
            raise TransformError("a lookup transform needs the sample's row index")
        if not 0 <= i < table.shape[0]:
            raise TransformError(f"row {i} outside lookup table of {table.shape[0]} rows")
        return table[i]

    def __repr__(self):
        return f"Precomputed(shape={self.matrix.shape}, source={self.source!r})"


class FunctionTransform(Transform):
    """Wraps an arbitrary deterministic function of the raw sample."""

    def __init__(self, func: Callable, out_dim: int, name: Optional[str] = None):
        self.func = func
        self.out_dim = int(out_dim)
        self.name = name or getattr(func, "__name__", "function")

    def output_dim(self, input_dim):
        return self.out_dim

    def apply(self, sample, i=None, lookup=None):
        return np.asarray(self.func(sample), dtype=float).reshape(-1)

    def __repr__(self):
        return f"FunctionTransform({self.name}, out_dim={self.out_dim})"


def apply_transform(transforms: Sequence[Transform], k: int, sample, i=None, lookup=None) -> np.ndarray:
    """Features for module ``k`` (1-based), validated into the unit box."""
    if not 1 <= k <= len(transforms):
        raise TransformError(f"module index {k} out of range 1..{len(transforms)}")
    t = transforms[k - 1]
    out = np.asarray(t.apply(np.asarray(sample, dtype=float), i, lookup), dtype=float)
    if out.ndim != 1:
        raise TransformError(f"transform for module {k} returned shape {out.shape}, expected 1-d")
    if isinstance(t, (FunctionTransform, Precomputed)):
        if not np.all((out >= 0.0) & (out <= 1.0)):
            raise TransformError(f"transform for module {k} produced values outside [0, 1]")
    return out
