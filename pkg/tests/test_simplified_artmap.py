import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deepartmap import (
    DimensionError,
    FuzzyART,
    FuzzyARTParams,
    MapField,
    complement_code,
    match_tracking_raise,
    supervised_train_step,
)


def test_match_tracking_raise():
    assert match_tracking_raise(0.975, 1e-10) == 0.975 + 1e-10
    assert match_tracking_raise(1.0, 1e-10) == 1.0 + 1e-10
    assert match_tracking_raise(0.0, 0.5) == 0.5


def test_empty_module_commits():
    art, mf = FuzzyART(2), MapField()
    x = complement_code([0.3, 0.4])
    assert supervised_train_step(art, mf, x, 3) == 0
    assert mf.assoc == {0: 3}
    np.testing.assert_array_equal(art.weights[0], x)


def test_accept_path():
    art, mf = FuzzyART(2, FuzzyARTParams(rho=0.5)), MapField()
    x = complement_code([0.3, 0.4])
    supervised_train_step(art, mf, x, 3)
    assert supervised_train_step(art, mf, x, 3) == 0
    np.testing.assert_array_equal(art.weights[0], x)
    assert art.n_categories == 1


def test_conflict_forces_new_category():
    art, mf = FuzzyART(2, FuzzyARTParams(rho=0.5)), MapField()
    x = complement_code([0.3, 0.4])
    supervised_train_step(art, mf, x, 3)
    trace = []
    assert supervised_train_step(art, mf, x, 4, trace=trace) == 1
    assert mf.assoc == {0: 3, 1: 4}
    assert art.params.rho == 0.5
    # one search that hit the conflict, then the raise past 1 short-circuits
    assert trace == [(2, 1)]
    np.testing.assert_array_equal(art.weights[0], x)


def test_conflict_then_second_candidate():
    # category 0 is closest but belongs to parent 0; category 1 is too far once vigilance rises
    art, mf = FuzzyART(1, FuzzyARTParams(rho=0.6)), MapField()
    supervised_train_step(art, mf, complement_code([0.5]), 0)
    supervised_train_step(art, mf, complement_code([0.9]), 1)
    c = supervised_train_step(art, mf, complement_code([0.6]), 1)
    # match with cat 0 = 0.9, so vigilance rises to 0.9 + eps; cat 1 has match 0.7
    assert c == 2
    art2, mf2 = FuzzyART(1, FuzzyARTParams(rho=0.6)), MapField()
    supervised_train_step(art2, mf2, complement_code([0.5]), 0)
    supervised_train_step(art2, mf2, complement_code([0.7]), 1)
    # cat 0 conflicts at match 0.9; cat 1 ties on match and cannot clear the lifted level
    assert supervised_train_step(art2, mf2, complement_code([0.6]), 1) == 2


def test_dimension_error():
    art, mf = FuzzyART(2), MapField()
    with pytest.raises(DimensionError):
        supervised_train_step(art, mf, complement_code([0.1]), 0)


def replay(points, parents, rho, eps=1e-10):
    """Independent single-scan formulation of match tracking."""
    weights, links, out = [], {}, []
    for p, parent in zip(points, parents):
        x = list(p) + [1 - v for v in p]
        ranked = sorted(
            range(len(weights)),
            key=lambda j: (-sum(min(a, b) for a, b in zip(x, weights[j])) / (1e-3 + sum(weights[j])), j),
        )
        level, chosen = rho, None
        for j in ranked:
            if level > 1:
                break
            m = sum(min(a, b) for a, b in zip(x, weights[j])) / len(p)
            if m < level - 1e-12:
                continue
            if links[j] == parent:
                chosen = j
                break
            level = min(m + eps, 1 + eps)
        if chosen is None:
            weights.append(x)
            chosen = len(weights) - 1
        else:
            weights[chosen] = [min(a, b) for a, b in zip(x, weights[chosen])]
        links[chosen] = parent
        out.append((chosen, parent))
    return out, weights


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 32), st.floats(0.0, 1.0), st.integers(1, 4))
def test_replay_against_brute_force(seed, n, rho, n_parents):
    rng = np.random.default_rng(seed)
    pts = rng.random((n, 2))
    parents = rng.integers(0, n_parents, n)
    art, mf = FuzzyART(2, FuzzyARTParams(rho=rho)), MapField()
    trace = []
    got = []
    for p, parent in zip(pts, parents):
        before = art.n_categories
        c = supervised_train_step(art, mf, complement_code(p), int(parent), trace=trace)
        got.append((c, int(parent)))
        assert mf.parent_of(c) == parent
        assert trace[-1][0] <= before + 1
    assert art.params.rho == rho
    expected, weights = replay(pts.tolist(), parents.tolist(), rho)
    assert got == expected
    np.testing.assert_allclose(np.array(art.weights), np.array(weights), atol=0)
