"""Fuzzy ART: complement coding, category choice, vigilance and fast learning.

All patterns handled here are complement coded, so a raw vector ``v`` of
length ``d`` becomes ``[v, 1 - v]`` and its L1 norm is exactly ``d``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

import numpy as np

from .errors import DimensionError, DomainError, NotFittedError

VIGILANCE_TOL = 1e-12


def complement_code(v) -> np.ndarray:
    """Return ``[v, 1 - v]`` for a raw sample with components in [0, 1]."""
    v = np.asarray(v, dtype=float)
    if v.ndim != 1:
        raise DimensionError(f"expected a 1-d sample, got shape {v.shape}")
    bad = np.flatnonzero(~((v >= 0.0) & (v <= 1.0)))
    if bad.size:
        i = int(bad[0])
        raise DomainError(f"component {i} = {v[i]!r} is outside [0, 1]")
    return np.concatenate([v, 1.0 - v])


def _check_pair(x, w):
    if x.shape != w.shape:
        raise DimensionError(f"pattern length {x.shape} != weight length {w.shape}")


def activation(x, w, alpha: float) -> float:
    """Category choice ``|x ^ w| / (alpha + |w|)``."""
    x = np.asarray(x, dtype=float)
    w = np.asarray(w, dtype=float)
    _check_pair(x, w)
    return float(np.minimum(x, w).sum() / (alpha + w.sum()))


def match_criterion(x, w) -> float:
    """Fraction of the pattern retained by the prototype, ``|x ^ w| / |x|``."""
    x = np.asarray(x, dtype=float)
    w = np.asarray(w, dtype=float)
    _check_pair(x, w)
    return float(np.minimum(x, w).sum() / x.sum())


def update_weight(x, w, beta: float) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    w = np.asarray(w, dtype=float)
    _check_pair(x, w)
    if beta == 1.0:
        return np.minimum(x, w)
    return beta * np.minimum(x, w) + (1.0 - beta) * w


@dataclass(frozen=True)
class FuzzyARTParams:
    rho: float = 0.75
    alpha: float = 1e-3
    beta: float = 1.0

    def __post_init__(self):
        for problem in self.problems():
            raise ValueError(problem)

    def problems(self) -> list:
        return param_problems(self.rho, self.alpha, self.beta)


def param_problems(rho, alpha, beta) -> list:
    out = []
    if not 0.0 <= rho <= 1.0:
        out.append(f"vigilance rho={rho} must lie in [0, 1]")
    if not alpha > 0.0:
        out.append(f"choice parameter alpha={alpha} must be > 0")
    if not 0.0 < beta <= 1.0:
        out.append(f"learning rate beta={beta} must lie in (0, 1]")
    return out


@dataclass(frozen=True)
class Resonant:
    category: int
    match: float


@dataclass(frozen=True)
class Exhausted:
    pass


SearchOutcome = Union[Resonant, Exhausted]


@dataclass
class FuzzyART:
    """A single Fuzzy ART module over complement-coded patterns.

    Categories are append-only; an index, once handed out, always refers to
    the same prototype.
    """

    raw_dim: int
    params: FuzzyARTParams = field(default_factory=FuzzyARTParams)
    weights: list = field(default_factory=list)
    sample_counts: list = field(default_factory=list)
    # bumped on every commit and every weight change that alters a prototype
    revision: int = field(default=0, compare=False)

    @property
    def n_categories(self) -> int:
        return len(self.weights)

    def _check(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (2 * self.raw_dim,):
            raise DimensionError(
                f"pattern length {x.shape[-1] if x.ndim else 0} does not match "
                f"module width {2 * self.raw_dim}"
            )
        return x

    def _scores(self, x):
        x = self._check(x)
        W = np.asarray(self.weights)
        overlap = np.minimum(x, W).sum(axis=1)
        return overlap / (self.params.alpha + W.sum(axis=1)), overlap / x.sum()

    def activations(self, x) -> np.ndarray:
        """Choice values for every committed category, in index order."""
        if not self.weights:
            self._check(x)
            return np.empty(0)
        return self._scores(x)[0]

    def matches(self, x) -> np.ndarray:
        if not self.weights:
            self._check(x)
            return np.empty(0)
        return self._scores(x)[1]

    def resonance_search(
        self,
        x,
        vigilance: Optional[float] = None,
        excluded: Iterable[int] = (),
    ) -> SearchOutcome:
        """Visit categories by decreasing activation and return the first one
        passing the vigilance test. Nothing is modified."""
        rho = self.params.rho if vigilance is None else vigilance
        if not self.weights:
            self._check(x)
            return Exhausted()
        T, M = self._scores(x)
        excluded = set(excluded)
        # stable sort on -T keeps the lowest index first among ties
        for j in np.argsort(-T, kind="stable"):
            j = int(j)
            if j in excluded:
                continue
            if M[j] >= rho - VIGILANCE_TOL:
                return Resonant(j, float(M[j]))
        return Exhausted()

    def commit_new_category(self, x) -> int:
        x = self._check(x)
        self.weights.append(x.copy())
        self.sample_counts.append(1)
        self.revision += 1
        return len(self.weights) - 1

    def learn(self, x, category: int) -> None:
        x = self._check(x)
        new = update_weight(x, self.weights[category], self.params.beta)
        if not np.array_equal(new, self.weights[category]):
            self.revision += 1
        self.weights[category] = new
        self.sample_counts[category] += 1

    def train_step(self, x) -> int:
        """One unsupervised presentation; returns the resonant or new category."""
        outcome = self.resonance_search(x)
        if isinstance(outcome, Resonant):
            self.learn(x, outcome.category)
            return outcome.category
        return self.commit_new_category(x)

    def classify(self, x, strict: bool = False) -> int:
        """Highest-activation category. With ``strict=True`` only categories
        passing vigilance are eligible and -1 signals no match."""
        if not self.weights:
            raise NotFittedError("module has no committed categories")
        if strict:
            outcome = self.resonance_search(x)
            return outcome.category if isinstance(outcome, Resonant) else -1
        return int(np.argmax(self.activations(x)))
