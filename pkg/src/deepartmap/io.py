"""CSV ingestion, min-max scaling, model files, config files and DOT export."""
from __future__ import annotations

import csv
import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import yaml

from .deep_artmap import DeepARTMAP, Supervision
from .errors import ConfigError, DataError, ModelFileError, NotFittedError, UnsupportedVersionError
from .fuzzy_art import FuzzyARTParams
from .transforms import ColumnSubset, FunctionTransform, Identity, Precomputed

log = logging.getLogger(__name__)

MAGIC = "deepartmap-model"
FORMAT_VERSION = 1


@dataclass
class Dataset:
    X: np.ndarray
    feature_names: Optional[list] = None

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def d(self) -> int:
        return self.X.shape[1]


def load_csv(path, has_header: bool = False, label_columns: Optional[Sequence[int]] = None):
    """Read a numeric CSV, splitting off the label columns if given.

    Returns ``(dataset, targets)``; ``targets`` is ``None`` without label
    columns, a 1-d array for a single column and 2-d otherwise.
    """
    rows, names = [], None
    width = None
    with open(path, newline="") as fh:
        for lineno, record in enumerate(csv.reader(fh), start=1):
            if not record or all(not c.strip() for c in record):
                continue
            if has_header and names is None:
                names = [c.strip() for c in record]
                width = len(names)
                continue
            if width is None:
                width = len(record)
            if len(record) != width:
                raise DataError(f"{path}: line {lineno}: expected {width} fields, got {len(record)}")
            try:
                values = [float(c) for c in record]
            except ValueError:
                raise DataError(f"{path}: line {lineno}: non-numeric field") from None
            if not all(math.isfinite(v) for v in values):
                raise DataError(f"{path}: line {lineno}: non-finite value")
            rows.append(values)
    if not rows:
        raise DataError(f"{path}: no data rows")
    table = np.array(rows, dtype=float)
    targets = None
    if label_columns:
        label_columns = [int(c) % table.shape[1] for c in label_columns]
        keep = [j for j in range(table.shape[1]) if j not in label_columns]
        targets = table[:, label_columns]
        if len(label_columns) == 1:
            targets = targets[:, 0]
        table = table[:, keep]
        if names is not None:
            names = [names[j] for j in keep]
    return Dataset(table, names), targets


@dataclass
class ScalingStats:
    min: np.ndarray
    max: np.ndarray

    def to_dict(self):
        return {"min": self.min.tolist(), "max": self.max.tolist()}

    @classmethod
    def from_dict(cls, d):
        return cls(np.asarray(d["min"], dtype=float), np.asarray(d["max"], dtype=float))


def scale(X, stats: Optional[ScalingStats] = None):
    """Min-max scale each column into [0, 1].

    Without ``stats`` the range is taken from ``X``. Constant columns map to
    0.5; values outside a supplied range are clipped (and counted in a log
    warning).
    """
    X = np.asarray(X, dtype=float)
    if stats is None:
        stats = ScalingStats(X.min(axis=0), X.max(axis=0))
    span = stats.max - stats.min
    flat = span == 0
    with np.errstate(divide="ignore", invalid="ignore"):
        out = (X - stats.min) / np.where(flat, 1.0, span)
    out[:, flat] = 0.5
    outside = int(np.count_nonzero((out < 0.0) | (out > 1.0)))
    if outside:
        log.warning("clipped %d value(s) outside the fitted range", outside)
    return np.clip(out, 0.0, 1.0), stats


# ---------------------------------------------------------------------------
# model files


def _transform_to_dict(t):
    if isinstance(t, Identity):
        return {"kind": "identity"}
    if isinstance(t, ColumnSubset):
        return {"kind": "columns", "indices": list(t.indices)}
    if isinstance(t, Precomputed):
        return {"kind": "lookup", "source": t.source, "rows": t.matrix.tolist()}
    if isinstance(t, FunctionTransform):
        raise ModelFileError(f"cannot save a model holding a function transform ({t.name})")
    raise ModelFileError(f"unknown transform {t!r}")


def _transform_from_dict(d):
    kind = d["kind"]
    if kind == "identity":
        return Identity()
    if kind == "columns":
        return ColumnSubset(d["indices"])
    if kind == "lookup":
        return Precomputed(np.asarray(d["rows"], dtype=float).reshape(len(d["rows"]), -1), d.get("source"))
    raise ModelFileError(f"unknown transform kind {kind!r}")


def model_to_dict(model: DeepARTMAP) -> dict:
    scaling = getattr(model, "scaling", None)
    return {
        "magic": MAGIC,
        "format_version": FORMAT_VERSION,
        "config": {
            "mode": model.mode.value,
            "levels": model.n_levels,
            "input_dim": model.input_dim,
            "label_dim": model.label_dim,
            "epsilon": model.epsilon,
            "modules": [{"rho": p.rho, "alpha": p.alpha, "beta": p.beta} for p in model.params],
            "transforms": [_transform_to_dict(t) for t in model.transforms],
        },
        "state": {
            "fitted": model.fitted,
            "modules": [
                {
                    "raw_dim": m.raw_dim,
                    "weights": [w.tolist() for w in m.weights],
                    "sample_counts": list(m.sample_counts),
                }
                for m in model.modules
            ],
            "map_fields": [sorted(mf.assoc.items()) for mf in model.map_fields],
        },
        "scaling": None if scaling is None else scaling.to_dict(),
    }


def model_from_dict(doc: dict) -> DeepARTMAP:
    if not isinstance(doc, dict) or doc.get("magic") != MAGIC:
        raise ModelFileError("not a DeepARTMAP model file")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise UnsupportedVersionError(f"unsupported model format version {version!r}")
    try:
        cfg, state = doc["config"], doc["state"]
        model = DeepARTMAP(
            [FuzzyARTParams(**p) for p in cfg["modules"]],
            input_dim=cfg["input_dim"],
            transforms=[_transform_from_dict(t) for t in cfg["transforms"]],
            mode=cfg["mode"],
            label_dim=cfg["label_dim"],
            epsilon=cfg["epsilon"],
        )
        for m, s in zip(model.modules, state["modules"], strict=True):
            m.weights = [np.asarray(w, dtype=float) for w in s["weights"]]
            m.sample_counts = [int(c) for c in s["sample_counts"]]
        for mf, pairs in zip(model.map_fields, state["map_fields"], strict=True):
            mf.assoc = {int(c): int(p) for c, p in pairs}
        model.fitted = bool(state["fitted"])
        model.scaling = None if doc.get("scaling") is None else ScalingStats.from_dict(doc["scaling"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFileError(f"malformed model file: {exc}") from exc
    return model


def save_model(model: DeepARTMAP, path) -> None:
    if not model.fitted:
        raise NotFittedError("refusing to save an untrained model")
    text = json.dumps(model_to_dict(model), indent=1)
    Path(path).write_text(text + "\n")


def load_model(path) -> DeepARTMAP:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ModelFileError(f"{path}: corrupt model file ({exc})") from exc
    except OSError as exc:
        raise ModelFileError(f"{path}: {exc}") from exc
    return model_from_dict(doc)


# ---------------------------------------------------------------------------
# config files


@dataclass
class RunConfig:
    params: list
    transform_specs: list
    mode: Supervision
    epochs: int = 1
    shuffle_seed: Optional[int] = None
    label_columns: Optional[list] = None
    has_header: bool = False
    epsilon: float = 1e-10


def _parse_transform_spec(spec):
    """Accepts ``identity``, ``columns=[0, 2]``, ``file=path`` or the mapping forms."""
    if spec is None or spec == "identity":
        return {"kind": "identity"}
    if isinstance(spec, str):
        key, sep, value = spec.partition("=")
        if not sep:
            raise ConfigError(f"unrecognised transform {spec!r}")
        spec = {key.strip(): yaml.safe_load(value)}
    if isinstance(spec, dict) and len(spec) == 1:
        (key, value), = spec.items()
        if key == "columns":
            if not isinstance(value, list):
                raise ConfigError(f"columns transform needs a list, got {value!r}")
            return {"kind": "columns", "indices": [int(v) for v in value]}
        if key == "file":
            return {"kind": "lookup", "source": str(value)}
    raise ConfigError(f"unrecognised transform {spec!r}")


def parse_config(doc: dict) -> RunConfig:
    if not isinstance(doc, dict):
        raise ConfigError("config must be a mapping")
    try:
        mode = Supervision(doc.get("mode", "unsupervised"))
    except ValueError:
        raise ConfigError(f"unknown mode {doc.get('mode')!r}") from None
    modules = doc.get("modules")
    if not isinstance(modules, list) or not modules:
        raise ConfigError("config needs a non-empty 'modules' list")
    params, specs = [], []
    for k, m in enumerate(modules, start=1):
        if not isinstance(m, dict):
            raise ConfigError(f"module {k}: expected a mapping")
        params.append({
            "rho": m.get("vigilance", m.get("rho", FuzzyARTParams.rho)),
            "alpha": m.get("alpha", FuzzyARTParams.alpha),
            "beta": m.get("beta", FuzzyARTParams.beta),
        })
        specs.append(_parse_transform_spec(m.get("transform")))
    if mode is Supervision.VECTOR:
        if specs[-1]["kind"] != "identity":
            raise ConfigError("the label-side module takes the label vector; it cannot have a transform")
        specs = specs[:-1]
    labels = doc.get("label_columns")
    if labels is not None and not isinstance(labels, list):
        labels = [labels]
    if mode is not Supervision.UNSUPERVISED and not labels:
        raise ConfigError(f"{mode.value} mode needs 'label_columns'")
    if mode is Supervision.INTEGER and labels and len(labels) != 1:
        raise ConfigError("integer mode takes exactly one label column")
    return RunConfig(
        params=params,
        transform_specs=specs,
        mode=mode,
        epochs=int(doc.get("epochs", 1)),
        shuffle_seed=doc.get("shuffle_seed"),
        label_columns=labels,
        has_header=bool(doc.get("has_header", False)),
        epsilon=float(doc.get("epsilon", 1e-10)),
    )


def load_config(path) -> RunConfig:
    try:
        doc = yaml.safe_load(Path(path).read_text())
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    cfg = parse_config(doc)
    base = Path(path).parent
    for spec in cfg.transform_specs:
        if spec["kind"] == "lookup":
            src = Path(spec["source"])
            spec["source"] = str(src if src.is_absolute() else base / src)
    return cfg


def build_transforms(specs, n_rows: Optional[int] = None) -> list:
    """Instantiate transform specs; lookup tables are read and scaled from CSV."""
    out = []
    for k, spec in enumerate(specs, start=1):
        if spec["kind"] == "identity":
            out.append(Identity())
        elif spec["kind"] == "columns":
            out.append(ColumnSubset(spec["indices"]))
        else:
            table = read_lookup_table(spec["source"])
            if n_rows is not None and table.shape[0] != n_rows:
                raise DataError(
                    f"module {k}: lookup file {spec['source']} has {table.shape[0]} rows, data has {n_rows}"
                )
            out.append(Precomputed(table, spec["source"]))
    return out


def read_lookup_table(path) -> np.ndarray:
    ds, _ = load_csv(path)
    if ds.X.min() < 0.0 or ds.X.max() > 1.0:
        raise DataError(f"{path}: lookup features must already lie in [0, 1]")
    return ds.X


# ---------------------------------------------------------------------------
# visualisation


def export_dot(model: DeepARTMAP) -> str:
    """Graphviz digraph of the category hierarchy, parents pointing to children."""
    if not model.fitted:
        raise NotFittedError("model has not been trained")
    lines = ["digraph deepartmap {", "  rankdir=TB;"]
    for k, art in enumerate(model.modules, start=1):
        for j in range(art.n_categories):
            lines.append(f'  m{k}_c{j} [label="module {k}\\ncategory {j}\\nn={art.sample_counts[j]}"];')
    if model.mode is Supervision.INTEGER:
        L = model.n_levels
        for label in sorted(set(model.map_fields[-1].assoc.values())):
            lines.append(f'  m{L}_c{label} [label="module {L}\\nlabel {label}", shape=box];')
    for k, mf in enumerate(model.map_fields, start=1):
        for child, parent in sorted(mf.assoc.items()):
            lines.append(f"  m{k + 1}_c{parent} -> m{k}_c{child};")
    lines.append("}")
    return "\n".join(lines) + "\n"
