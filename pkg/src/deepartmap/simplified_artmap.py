"""Supervised training of one (ART module, map field) layer with match tracking."""
from __future__ import annotations

from typing import Optional

from .fuzzy_art import FuzzyART, Resonant
from .map_field import MapField, Verdict

DEFAULT_EPSILON = 1e-10


def match_tracking_raise(match_value: float, epsilon: float = DEFAULT_EPSILON) -> float:
    """Vigilance just above ``match_value`` so the offending category fails."""
    return min(match_value + epsilon, 1.0 + epsilon)


def supervised_train_step(
    art: FuzzyART,
    mapping: MapField,
    x,
    parent: int,
    epsilon: float = DEFAULT_EPSILON,
    trace: Optional[list] = None,
) -> int:
    """Assign ``x`` to a category of ``art`` whose parent is ``parent``.

    A category that resonates but already belongs to another parent triggers
    match tracking: vigilance is raised past its match value and the search
    resumes. If nothing is left a new category is committed under ``parent``.
    The module's stored vigilance is never touched.

    If ``trace`` is a list, ``(attempts, categories_before)`` is appended,
    where ``attempts`` counts search passes (a short-circuited commit counts
    as one).
    """
    rho = art.params.rho
    excluded = set()
    n_before = art.n_categories
    attempts = 0
    child = None
    while rho <= 1.0:
        attempts += 1
        outcome = art.resonance_search(x, vigilance=rho, excluded=excluded)
        if not isinstance(outcome, Resonant):
            break
        c = outcome.category
        if mapping.verify(c, parent) is Verdict.ACCEPT:
            art.learn(x, c)
            child = c
            break
        rho = match_tracking_raise(outcome.match, epsilon)
        excluded.add(c)
    else:
        # vigilance above 1: no category can pass, commit directly
        attempts += 1
    if child is None:
        child = art.commit_new_category(x)
    mapping.associate(child, parent)
    if trace is not None:
        trace.append((attempts, n_before))
    return child

