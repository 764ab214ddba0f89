"""Two-level nested blob data in the unit square.

Each root owns a rectangular region holding a small grid of leaf boxes.
Leaf boxes are separated by ``margin``; roots are separated by more than
the L1 extent of a root region, and leaves by more than the L1 extent of a
leaf box, so a box-shaped clusterer with the right size limit can recover
both levels exactly regardless of presentation order.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import SyntheticSpecError


def layout(roots: int, children: int, margin: float):
    """Geometry of the nested grid: leaf side, root size and root gap."""
    leaf_cols = math.ceil(math.sqrt(children))
    leaf_rows = math.ceil(children / leaf_cols)
    side = margin / 10
    width = leaf_cols * side + (leaf_cols - 1) * margin
    height = leaf_rows * side + (leaf_rows - 1) * margin
    gap = width + height + margin
    root_cols = math.ceil(math.sqrt(roots))
    root_rows = math.ceil(roots / root_cols)
    total_w = root_cols * width + (root_cols - 1) * gap
    total_h = root_rows * height + (root_rows - 1) * gap
    return {
        "leaf_grid": (leaf_rows, leaf_cols),
        "root_grid": (root_rows, root_cols),
        "leaf_side": side,
        "root_size": (width, height),
        "root_gap": gap,
        "extent": (total_w, total_h),
    }


def gen_synthetic(roots: int, children: int, points: int, margin: float, seed: int = 0):
    """Return ``(X, truth)``: ``roots * children * points`` 2-d samples and an
    ``(n, 2)`` integer array of (leaf label, root label) per sample.

    Rows come out in a seeded random order.
    """
    if min(roots, children, points) < 1:
        raise SyntheticSpecError("roots, children and points must all be >= 1")
    if not margin > 0:
        raise SyntheticSpecError(f"margin must be positive, got {margin}")
    geo = layout(roots, children, margin)
    total_w, total_h = geo["extent"]
    if total_w > 1.0 or total_h > 1.0:
        raise SyntheticSpecError(
            f"{roots} roots x {children} leaves need a {total_w:.3f} x {total_h:.3f} region "
            f"at margin {margin}; reduce the counts or the margin"
        )
    rng = np.random.default_rng(seed)
    side, gap = geo["leaf_side"], geo["root_gap"]
    width, height = geo["root_size"]
    _, root_cols = geo["root_grid"]
    _, leaf_cols = geo["leaf_grid"]
    x0, y0 = (1.0 - total_w) / 2, (1.0 - total_h) / 2

    X, truth = [], []
    for r in range(roots):
        rx = x0 + (r % root_cols) * (width + gap)
        ry = y0 + (r // root_cols) * (height + gap)
        for c in range(children):
            lx = rx + (c % leaf_cols) * (side + margin)
            ly = ry + (c // leaf_cols) * (side + margin)
            pts = rng.uniform(0.0, side, size=(points, 2)) + (lx, ly)
            X.append(pts)
            truth.extend([(r * children + c, r)] * points)
    X = np.clip(np.vstack(X), 0.0, 1.0)
    truth = np.asarray(truth, dtype=int)
    order = rng.permutation(len(X))
    return X[order], truth[order]
