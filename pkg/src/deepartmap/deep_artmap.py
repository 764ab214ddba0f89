"""DeepARTMAP: a chain of Fuzzy ART modules joined by map fields.

Module 1 is the finest (leaf) level and module ``L`` the coarsest (root).
Training presents each sample to module ``L`` first; its category then acts
as the supervising label for module ``L - 1`` and so on down to module 1.
Inference classifies every module independently.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Optional, Sequence

import numpy as np

from .errors import ConfigError, DataError, DimensionError, NotFittedError, TransformError
from .fuzzy_art import FuzzyART, FuzzyARTParams, complement_code, param_problems
from .map_field import MapField
from .simplified_artmap import DEFAULT_EPSILON, supervised_train_step
from .transforms import Identity, Transform, apply_transform

log = logging.getLogger(__name__)


class Supervision(str, Enum):
    UNSUPERVISED = "unsupervised"
    VECTOR = "vector"
    INTEGER = "integer"


@dataclass
class ConfigReport:
    errors: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors


def _as_params(p):
    if isinstance(p, FuzzyARTParams):
        return p.rho, p.alpha, p.beta
    p = dict(p)
    return (
        p.get("rho", p.get("vigilance", FuzzyARTParams.rho)),
        p.get("alpha", FuzzyARTParams.alpha),
        p.get("beta", FuzzyARTParams.beta),
    )


def validate_config(
    params: Sequence,
    transforms: Optional[Sequence[Transform]] = None,
    mode="unsupervised",
    input_dim: Optional[int] = None,
    label_dim: Optional[int] = None,
) -> ConfigReport:
    """Check a model configuration without building it.

    ``params`` holds one entry per ART module (module 1 first). In integer
    label mode there is no ART module for the top level, so ``L`` is
    ``len(params) + 1``. ``transforms`` gives one entry per sample-fed module,
    which excludes the label-side module in vector mode.
    """
    report = ConfigReport()
    try:
        mode = Supervision(mode)
    except ValueError:
        report.errors.append(f"unknown supervision mode {mode!r}")
        return report

    n_art = len(params)
    n_fed = n_art - 1 if mode is Supervision.VECTOR else n_art
    min_art = {Supervision.UNSUPERVISED: 1, Supervision.VECTOR: 2, Supervision.INTEGER: 1}[mode]
    if n_art < min_art:
        levels = n_art + 1 if mode is Supervision.INTEGER else n_art
        report.errors.append(f"{mode.value} mode needs at least {min_art + (mode is Supervision.INTEGER)} levels, got {levels}")

    rhos = []
    for k, p in enumerate(params, start=1):
        try:
            rho, alpha, beta = _as_params(p)
        except (TypeError, ValueError) as exc:
            report.errors.append(f"module {k}: unreadable parameters ({exc})")
            continue
        rhos.append(rho)
        report.errors.extend(f"module {k}: {msg}" for msg in param_problems(rho, alpha, beta))

    if transforms is None:
        transforms = [Identity()] * max(n_fed, 0)
    if len(transforms) != max(n_fed, 0):
        report.errors.append(
            f"expected {max(n_fed, 0)} transforms (one per sample-fed module), got {len(transforms)}"
        )
    for k, t in enumerate(transforms, start=1):
        if not isinstance(t, Transform):
            report.errors.append(f"module {k}: {t!r} is not a transform")
            continue
        report.errors.extend(f"module {k}: {msg}" for msg in t.problems(input_dim))
    if mode is Supervision.VECTOR and label_dim is not None and label_dim < 1:
        report.errors.append(f"label dimension must be >= 1, got {label_dim}")
    if input_dim is not None and input_dim < 1:
        report.errors.append(f"input dimension must be >= 1, got {input_dim}")

    if report.errors:
        return report

    # vigilance ordering only means something between modules seeing the same features
    fed = list(zip(rhos[:n_fed], transforms))
    for k in range(len(fed) - 1):
        (rho_k, t_k), (rho_up, t_up) = fed[k], fed[k + 1]
        if isinstance(t_k, Identity) and isinstance(t_up, Identity) and not rho_k > rho_up:
            report.warnings.append(
                f"vigilance of module {k + 1} ({rho_k}) is not above module {k + 2} ({rho_up}); "
                "identical inputs need finer vigilance toward module 1 to form a divisive hierarchy"
            )
    all_identity = all(isinstance(t, Identity) for t in transforms)
    if mode is Supervision.UNSUPERVISED and all_identity and n_fed > 1 and len(set(rhos)) == 1:
        report.warnings.append(
            "all modules share the same input and vigilance; the levels will duplicate each other"
        )
    return report


@dataclass
class Node:
    module: int
    category: int
    children: list = field(default_factory=list)

    def leaves(self) -> list:
        if not self.children:
            return [self]
        return [leaf for c in self.children for leaf in c.leaves()]

    def paths(self) -> list:
        if not self.children:
            return [[(self.module, self.category)]]
        return [[(self.module, self.category)] + p for c in self.children for p in c.paths()]


class DeepARTMAP:
    """Hierarchical ARTMAP over arbitrary per-module views of each sample.

    Parameters
    ----------
    params : sequence of FuzzyARTParams (or dicts), module 1 first.
        In vector mode the last entry configures the label-side module.
        In integer mode there is no top ART module; the labels play its role.
    input_dim : number of raw features per sample.
    transforms : one transform per sample-fed module; identity by default.
    mode : "unsupervised", "vector" or "integer".
    label_dim : width of label vectors (vector mode only).
    epsilon : match-tracking increment.
    """

    def __init__(
        self,
        params: Sequence,
        input_dim: int,
        transforms: Optional[Sequence[Transform]] = None,
        mode="unsupervised",
        label_dim: Optional[int] = None,
        epsilon: float = DEFAULT_EPSILON,
    ):
        self.mode = Supervision(mode)
        n_fed = len(params) - 1 if self.mode is Supervision.VECTOR else len(params)
        if transforms is None:
            transforms = [Identity() for _ in range(max(n_fed, 0))]
        if self.mode is Supervision.VECTOR and label_dim is None:
            raise ConfigError("vector mode needs label_dim")
        report = validate_config(params, transforms, self.mode, input_dim, label_dim)
        if not report.ok:
            raise ConfigError("; ".join(report.errors))
        for w in report.warnings:
            log.warning(w)
        if not epsilon > 0:
            raise ConfigError(f"match-tracking epsilon must be > 0, got {epsilon}")
        self.config_warnings = report.warnings
        params = [p if isinstance(p, FuzzyARTParams) else FuzzyARTParams(*_as_params(p)) for p in params]
        self.input_dim = int(input_dim)
        self.label_dim = label_dim
        self.transforms = list(transforms)
        self.epsilon = float(epsilon)
        dims = [t.output_dim(self.input_dim) for t in self.transforms]
        if self.mode is Supervision.VECTOR:
            dims.append(int(label_dim))
        self.modules = [FuzzyART(d, p) for d, p in zip(dims, params)]
        self.map_fields = [MapField() for _ in range(self.n_levels - 1)]
        self.fitted = False
        # min-max ranges of the raw features, set when data was scaled before fitting
        self.scaling = None

    @property
    def n_levels(self) -> int:
        return len(self.modules) + (self.mode is Supervision.INTEGER)

    @property
    def params(self) -> list:
        return [m.params for m in self.modules]

    def category_counts(self) -> list:
        counts = [m.n_categories for m in self.modules]
        if self.mode is Supervision.INTEGER:
            counts.append(len(set(self.map_fields[-1].assoc.values())))
        return counts

    def _features(self, k: int, sample, i=None, lookups=None):
        lookup = None if lookups is None else lookups.get(k)
        out = apply_transform(self.transforms, k, sample, i, lookup)
        if out.shape[0] != self.modules[k - 1].raw_dim:
            raise TransformError(
                f"transform for module {k} returned {out.shape[0]} features, expected {self.modules[k - 1].raw_dim}"
            )
        return out

    def _check_sample(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape != (self.input_dim,):
            raise DimensionError(f"sample has shape {x.shape}, expected ({self.input_dim},)")
        return x

    def _top_label(self, label):
        if self.mode is Supervision.UNSUPERVISED:
            if label is not None:
                raise DataError("unsupervised model given a label")
            return None
        if label is None:
            raise DataError(f"{self.mode.value} mode needs a label for every sample")
        if self.mode is Supervision.INTEGER:
            arr = np.asarray(label)
            if arr.ndim != 0 or float(arr) != int(arr) or int(arr) < 0:
                raise DataError(f"integer label must be a non-negative integer, got {label!r}")
            return int(arr)
        vec = np.asarray(label, dtype=float).reshape(-1)
        if vec.size != self.label_dim:
            raise DimensionError(f"label has {vec.size} entries, expected {self.label_dim}")
        return complement_code(vec)

    def partial_fit(self, x, i: Optional[int] = None, label=None, trace: Optional[list] = None) -> np.ndarray:
        """Train on one sample; returns the category of every level, module 1 first.

        ``i`` is the sample's row index, needed only by lookup transforms.
        ``trace`` collects match-tracking attempt records (see
        :func:`supervised_train_step`).
        """
        x = self._check_sample(x)
        top = self._top_label(label)
        L = self.n_levels
        y = np.empty(L, dtype=int)
        if self.mode is Supervision.INTEGER:
            y[L - 1] = top
        elif self.mode is Supervision.VECTOR:
            y[L - 1] = self.modules[L - 1].train_step(top)
        else:
            y[L - 1] = self.modules[L - 1].train_step(complement_code(self._features(L, x, i)))
        for k in range(L - 1, 0, -1):
            xk = complement_code(self._features(k, x, i))
            y[k - 1] = supervised_train_step(
                self.modules[k - 1], self.map_fields[k - 1], xk, int(y[k]), self.epsilon, trace
            )
        self.fitted = True
        return y

    def _revision(self) -> int:
        return sum(m.revision for m in self.modules)

    def fit(
        self,
        X,
        y=None,
        epochs: int = 1,
        shuffle_seed: Optional[int] = None,
        until_stable: bool = False,
        trace=None,
    ) -> np.ndarray:
        """Incremental training over ``epochs`` passes, then a predict pass.

        With ``until_stable`` the passes stop early after an epoch that
        neither changed a weight nor committed a category; ``epochs`` is then
        the budget. ``self.epochs_run`` and ``self.stable`` record the outcome.
        """
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[0] == 0:
            raise DataError("fit needs a non-empty 2-d dataset")
        if epochs < 1:
            raise ConfigError(f"epochs must be >= 1, got {epochs}")
        n = X.shape[0]
        if self.mode is Supervision.UNSUPERVISED:
            if y is not None:
                raise DataError("unsupervised model given targets")
        else:
            if y is None:
                raise DataError(f"{self.mode.value} mode needs targets")
            y = np.asarray(y)
            if y.shape[0] != n:
                raise DataError(f"{y.shape[0]} targets for {n} samples")
        rng = np.random.default_rng(shuffle_seed) if shuffle_seed is not None else None
        self.stable = False
        for epoch in range(1, epochs + 1):
            before = self._revision()
            order = rng.permutation(n) if rng is not None else range(n)
            for i in order:
                self.partial_fit(X[i], int(i), None if y is None else y[i], trace)
            self.epochs_run = epoch
            self.stable = self._revision() == before
            if until_stable and self.stable:
                break
        return self.predict(X)

    def _require_fitted(self):
        if not self.fitted:
            raise NotFittedError("model has not been trained")

    def predict_module(self, X, k: int, lookups: Optional[Mapping] = None) -> np.ndarray:
        """Categories of sample-fed module ``k`` (1-based) for every row of ``X``."""
        self._require_fitted()
        art = self.modules[k - 1]
        X = np.asarray(X, dtype=float)
        out = np.empty(X.shape[0], dtype=int)
        for i, x in enumerate(X):
            out[i] = art.classify(complement_code(self._features(k, self._check_sample(x), i, lookups)))
        return out

    def predict(self, X, lookups: Optional[Mapping] = None) -> np.ndarray:
        """Label matrix of shape ``(n, L)``; column ``k - 1`` is module ``k``.

        Sample-fed modules are classified independently of each other. In
        supervised modes the top column is the parent recorded by the top map
        field for the module below, since labels are not known at inference.

        ``lookups`` maps a module index to a replacement table for its lookup
        transform, for predicting on rows other than the training rows.
        """
        self._require_fitted()
        X = np.asarray(X, dtype=float)
        if X.ndim != 2:
            raise DimensionError(f"expected a 2-d dataset, got shape {X.shape}")
        L = self.n_levels
        n_fed = L if self.mode is Supervision.UNSUPERVISED else L - 1
        Y = np.empty((X.shape[0], L), dtype=int)
        for k in range(1, n_fed + 1):
            Y[:, k - 1] = self.predict_module(X, k, lookups)
        if n_fed < L:
            top = self.map_fields[L - 2]
            Y[:, L - 1] = [top.parent_of(int(c)) for c in Y[:, L - 2]]
        return Y

    def hierarchy(self) -> list:
        """Category tree as a list of root nodes (top level), children below."""
        self._require_fitted()
        L = self.n_levels

        def build(level, category):
            node = Node(level, category)
            if level > 1:
                node.children = [build(level - 1, c) for c in self.map_fields[level - 2].children_of(category)]
            return node

        if self.mode is Supervision.INTEGER:
            roots = sorted(set(self.map_fields[-1].assoc.values()))
        else:
            roots = range(self.modules[-1].n_categories)
        return [build(L, r) for r in roots]
