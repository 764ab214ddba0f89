"""Command-line interface for training, inference, inspection and data generation."""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from .deep_artmap import DeepARTMAP, Supervision, validate_config
from .errors import (
    ConfigError,
    DataError,
    DeepARTMAPError,
    DimensionError,
    DomainError,
    ModelFileError,
    NotFittedError,
    SyntheticSpecError,
    TransformError,
)
from .io import (
    build_transforms,
    export_dot,
    load_config,
    load_csv,
    load_model,
    read_lookup_table,
    save_model,
    scale,
)
from .metrics import adjusted_rand, check_self_consistency
from .synthetic import gen_synthetic

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_MODEL = 0, 1, 2, 3

log = logging.getLogger("deepartmap")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _write_csv(path, header, rows):
    with open(path, "w") as fh:
        if header:
            fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(repr(v) if isinstance(v, float) else str(v) for v in row) + "\n")


def _train(cfg, data_path):
    ds, targets = load_csv(data_path, has_header=cfg.has_header, label_columns=cfg.label_columns)
    X, stats = scale(ds.X)
    if cfg.mode is Supervision.VECTOR:
        targets = np.atleast_2d(targets.T).T
        targets, _ = scale(targets)
    elif cfg.mode is Supervision.INTEGER:
        if np.any(targets != np.round(targets)) or np.any(targets < 0):
            raise DataError("integer labels must be non-negative whole numbers")
        targets = targets.astype(int)
    transforms = build_transforms(cfg.transform_specs, n_rows=ds.n)
    model = DeepARTMAP(
        cfg.params,
        input_dim=ds.d,
        transforms=transforms,
        mode=cfg.mode,
        label_dim=None if cfg.mode is not Supervision.VECTOR else targets.shape[1],
        epsilon=cfg.epsilon,
    )
    model.scaling = stats
    Y = model.fit(X, targets, epochs=cfg.epochs, shuffle_seed=cfg.shuffle_seed)
    return model, Y


def cmd_fit(args):
    model, Y = _train(load_config(args.config), args.data)
    save_model(model, args.out)
    counts = ", ".join(f"module {k}: {c}" for k, c in enumerate(model.category_counts(), start=1))
    print(f"trained on {len(Y)} samples; categories per level -> {counts}")
    return EXIT_OK


def _parse_lookups(items):
    out = {}
    for item in items or []:
        key, sep, path = item.partition("=")
        if not sep or not key.isdigit():
            raise ConfigError(f"--lookup expects MODULE=PATH, got {item!r}")
        out[int(key)] = read_lookup_table(path)
    return out


def cmd_predict(args):
    model = load_model(args.model)
    drop = [int(c) for c in args.drop_columns.split(",")] if args.drop_columns else None
    ds, _ = load_csv(args.data, has_header=args.has_header, label_columns=drop)
    if ds.d != model.input_dim:
        raise DataError(f"data has {ds.d} features, model expects {model.input_dim}")
    X = scale(ds.X, model.scaling)[0] if model.scaling is not None else ds.X
    Y = model.predict(X, lookups=_parse_lookups(args.lookup) or None)
    L = model.n_levels
    header = [f"module_{k}" for k in range(1, L + 1)]
    if model.mode is Supervision.INTEGER:
        header[-1] = "label"
    _write_csv(args.out, header, Y.tolist())
    return EXIT_OK


def cmd_inspect(args):
    model = load_model(args.model)
    print(f"mode: {model.mode.value}")
    print(f"levels: {model.n_levels}")
    for k, art in enumerate(model.modules, start=1):
        p = art.params
        print(f"module {k}: {art.n_categories} categories (rho={p.rho}, alpha={p.alpha}, beta={p.beta})")
    if model.mode is Supervision.INTEGER:
        print(f"module {model.n_levels}: {model.category_counts()[-1]} distinct labels")
    if model.fitted:
        roots = model.hierarchy()
        print(f"hierarchy: {len(roots)} root(s)")
        for node in roots:
            print(f"  module {node.module} category {node.category}: {len(node.leaves())} leaf categories")
    return EXIT_OK


def cmd_export_dot(args):
    model = load_model(args.model)
    Path(args.out).write_text(export_dot(model))
    return EXIT_OK


def cmd_gen_synth(args):
    X, truth = gen_synthetic(args.roots, args.children, args.points, args.margin, args.seed)
    _write_csv(args.out, None, X.tolist())
    if args.truth:
        _write_csv(args.truth, ["leaf", "root"], truth.tolist())
    print(f"wrote {len(X)} samples to {args.out}")
    return EXIT_OK


def cmd_benchmark(args):
    truth = load_csv(args.truth, has_header=args.truth_header)[0].X.astype(int)
    for path in args.config:
        model, Y = _train(load_config(path), args.data)
        if len(Y) != len(truth):
            raise DataError(f"truth has {len(truth)} rows, data has {len(Y)}")
        counts = "/".join(str(c) for c in model.category_counts())
        scores = " ".join(
            f"ari{k}={adjusted_rand(Y[:, k - 1], truth[:, k - 1]):.4f}"
            for k in range(1, min(Y.shape[1], truth.shape[1]) + 1)
        )
        consistent = "yes" if check_self_consistency(Y) else "no"
        print(f"{path}: categories {counts} {scores} consistent={consistent}")
    return EXIT_OK


def cmd_validate(args):
    cfg = load_config(args.config)
    transforms = build_transforms(cfg.transform_specs)
    report = validate_config(cfg.params, transforms, cfg.mode)
    for msg in report.errors:
        print(f"error: {msg}")
    for msg in report.warnings:
        print(f"warning: {msg}")
    if report.ok:
        print("config ok")
        return EXIT_OK
    return EXIT_USAGE


def build_parser():
    p = _Parser(prog="deepartmap", description="Hierarchical ARTMAP clustering.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("fit", help="train a model from a CSV file")
    s.add_argument("--data", required=True)
    s.add_argument("--config", required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_fit)

    s = sub.add_parser("predict", help="write per-level categories for a CSV file")
    s.add_argument("--model", required=True)
    s.add_argument("--data", required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--has-header", action="store_true")
    s.add_argument("--drop-columns", help="comma-separated column indices to ignore (e.g. labels)")
    s.add_argument("--lookup", action="append", metavar="MODULE=PATH",
                   help="lookup table replacing a module's stored one for these rows")
    s.set_defaults(func=cmd_predict)

    s = sub.add_parser("inspect", help="summarise a saved model")
    s.add_argument("--model", required=True)
    s.set_defaults(func=cmd_inspect)

    s = sub.add_parser("export-dot", help="write the category hierarchy as Graphviz DOT")
    s.add_argument("--model", required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_export_dot)

    s = sub.add_parser("gen-synth", help="generate nested blob data")
    s.add_argument("--roots", type=int, required=True)
    s.add_argument("--children", type=int, required=True)
    s.add_argument("--points", type=int, required=True)
    s.add_argument("--margin", type=float, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", required=True)
    s.add_argument("--truth", help="optional CSV for the (leaf, root) ground truth")
    s.set_defaults(func=cmd_gen_synth)

    s = sub.add_parser("benchmark", help="score one or more configs against ground-truth labels")
    s.add_argument("--data", required=True)
    s.add_argument("--truth", required=True, help="CSV of true labels, one column per module starting at module 1")
    s.add_argument("--truth-header", action="store_true")
    s.add_argument("--config", required=True, action="append", help="repeat to compare transform orders")
    s.set_defaults(func=cmd_benchmark)

    s = sub.add_parser("validate", help="check a config file")
    s.add_argument("--config", required=True)
    s.set_defaults(func=cmd_validate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (ConfigError, SyntheticSpecError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ModelFileError as exc:
        print(f"model file error: {exc}", file=sys.stderr)
        return EXIT_MODEL
    except (DataError, DimensionError, DomainError, TransformError, NotFittedError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except DeepARTMAPError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
