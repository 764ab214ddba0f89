"""Hierarchy checks, clustering agreement, and brute-force reference learners.

The reference learners here are deliberately naive: plain Python lists, a
full re-sort of every candidate on every presentation, and no shared code
with the main modules. They exist so the optimized path can be compared
against something written separately.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import comb
from typing import Optional

import numpy as np

_TOL = 1e-12


@dataclass
class ConsistencyReport:
    passed: bool
    level: Optional[int] = None
    rows: Optional[tuple] = None

    def __bool__(self):
        return self.passed


def check_self_consistency(Y) -> ConsistencyReport:
    """Every level's labels must determine the next level's labels.

    On failure ``level`` is the 1-based column whose label maps to two
    different labels in column ``level + 1`` and ``rows`` is the first pair
    of rows showing it.
    """
    Y = np.asarray(Y)
    if Y.ndim != 2:
        raise ValueError(f"label matrix must be 2-d, got shape {Y.shape}")
    for k in range(Y.shape[1] - 1):
        first_row = {}
        for i in range(Y.shape[0]):
            child, parent = Y[i, k], Y[i, k + 1]
            j = first_row.setdefault(child, i)
            if Y[j, k + 1] != parent:
                return ConsistencyReport(False, k + 1, (j, i))
    return ConsistencyReport(True)


def adjusted_rand(a, b) -> float:
    """Adjusted Rand index from the contingency table of two labelings."""
    a = list(np.asarray(a).ravel())
    b = list(np.asarray(b).ravel())
    if len(a) != len(b):
        raise ValueError(f"label vectors differ in length: {len(a)} vs {len(b)}")
    n = len(a)
    if n < 2:
        raise ValueError("adjusted Rand needs at least two samples")
    pairs = sum(comb(c, 2) for c in Counter(zip(a, b)).values())
    rows = sum(comb(c, 2) for c in Counter(a).values())
    cols = sum(comb(c, 2) for c in Counter(b).values())
    total = comb(n, 2)
    expected = rows * cols / total
    best = (rows + cols) / 2
    if best == expected:
        # both labelings trivial (all singletons or one cluster)
        return 1.0
    return (pairs - expected) / (best - expected)


# ---------------------------------------------------------------------------
# reference learners


def _cc(v):
    v = [float(t) for t in v]
    return v + [1.0 - t for t in v]


def _overlap(x, w):
    total = 0.0
    for xi, wi in zip(x, w):
        total += xi if xi < wi else wi
    return total


class _PlainFuzzyART:
    def __init__(self, rho, alpha, beta):
        self.rho, self.alpha, self.beta = rho, alpha, beta
        self.w = []

    def ranked(self, x):
        scored = []
        for j, w in enumerate(self.w):
            t = _overlap(x, w) / (self.alpha + sum(w))
            scored.append((-t, j))
        scored.sort()
        return [j for _, j in scored]

    def match(self, x, j):
        return _overlap(x, self.w[j]) / sum(x)

    def learn(self, x, j):
        old = self.w[j]
        self.w[j] = [
            self.beta * min(xi, wi) + (1 - self.beta) * wi if self.beta != 1.0 else min(xi, wi)
            for xi, wi in zip(x, old)
        ]

    def commit(self, x):
        self.w.append(list(x))
        return len(self.w) - 1

    def present(self, x):
        for j in self.ranked(x):
            if self.match(x, j) >= self.rho - _TOL:
                self.learn(x, j)
                return j
        return self.commit(x)

    def best(self, x):
        return self.ranked(x)[0]


def oracle_fuzzy_art(X, rho, alpha=1e-3, beta=1.0, epochs=1) -> list:
    """Category sequence of a plain Fuzzy ART over the rows of ``X``."""
    art = _PlainFuzzyART(rho, alpha, beta)
    labels = []
    for _ in range(epochs):
        labels = [art.present(_cc(row)) for row in np.asarray(X)]
    return labels


def _present_under(art, x, parent, links, eps):
    """One supervised presentation, scanning candidates once.

    A candidate that passes vigilance but belongs to another parent lifts the
    vigilance to its own match plus ``eps``; later candidates in the ranking
    must clear the lifted level.
    """
    level = art.rho
    for j in art.ranked(x):
        if level > 1.0:
            break
        m = art.match(x, j)
        if m < level - _TOL:
            continue
        if links.get(j, parent) == parent:
            art.learn(x, j)
            links[j] = parent
            return j
        level = min(m + eps, 1.0 + eps)
    j = art.commit(x)
    links[j] = parent
    return j


def oracle_smart(X, vigilances, alpha=1e-3, beta=1.0, epsilon=1e-10, epochs=1, return_trace=False):
    """A vigilance-ordered chain of Fuzzy ART modules over one data stream.

    ``vigilances[0]`` belongs to the finest module. The coarsest module
    clusters freely and each finer module may only join categories already
    attached to the parent chosen above it. Returns the label matrix obtained
    by letting every trained module pick its best category for each row;
    with ``return_trace`` the per-sample training rows and the links between
    levels come back as well.
    """
    X = np.asarray(X)
    arts = [_PlainFuzzyART(r, alpha, beta) for r in vigilances]
    links = [dict() for _ in range(len(arts) - 1)]
    trace = []
    for _ in range(epochs):
        for row in X:
            x = _cc(row)
            labels = [0] * len(arts)
            labels[-1] = arts[-1].present(x)
            for k in range(len(arts) - 2, -1, -1):
                labels[k] = _present_under(arts[k], x, labels[k + 1], links[k], epsilon)
            trace.append(labels)
    Y = np.array([[art.best(_cc(row)) for art in arts] for row in X], dtype=int)
    if return_trace:
        return Y, trace, links
    return Y


def oracle_artmap(X, B, rho_a, rho_b, alpha=1e-3, beta=1.0, epsilon=1e-10):
    """Classic two-module ARTMAP with a fast-learning map field.

    ART-b clusters the target vectors ``B``; ART-a clusters ``X`` and, on a
    map-field mismatch, raises its vigilance just past the offending match,
    inhibits that node and searches again from scratch.

    Returns ``(trace, map_field)`` where trace holds ``(a, b)`` per sample.
    """
    art_a = _PlainFuzzyART(rho_a, alpha, beta)
    art_b = _PlainFuzzyART(rho_b, alpha, beta)
    mapping = {}
    trace = []
    for row, target in zip(np.asarray(X), np.asarray(B)):
        b = art_b.present(_cc(np.atleast_1d(target)))
        x = _cc(row)
        vig = rho_a
        inhibited = set()
        a = None
        while a is None:
            winner = None
            if vig <= 1.0:
                for j in art_a.ranked(x):
                    if j not in inhibited and art_a.match(x, j) >= vig - _TOL:
                        winner = j
                        break
            if winner is None:
                a = art_a.commit(x)
            elif mapping.get(winner, b) != b:
                inhibited.add(winner)
                vig = min(art_a.match(x, winner) + epsilon, 1.0 + epsilon)
            else:
                art_a.learn(x, winner)
                a = winner
        mapping[a] = b
        trace.append((a, b))
    return trace, mapping
