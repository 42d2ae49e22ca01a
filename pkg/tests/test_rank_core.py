from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import ansari_scores_sorted
from robust_lepage.rank_core import (
    InvalidSampleError,
    TwoSample,
    ansari_base_scores,
    ansari_midscores,
    ansari_scores,
    ecdf_placements,
    placements,
    pool_and_order,
)

int_lists = st.lists(st.integers(-5, 5), min_size=2, max_size=9)


def test_base_scores_small():
    assert ansari_base_scores(5).tolist() == [1, 2, 3, 2, 1]
    assert ansari_base_scores(6).tolist() == [1, 2, 3, 3, 2, 1]


def test_tie_groups_average_their_positions():
    # positions 2..4 of N=6 carry 2, 3, 3
    np.testing.assert_allclose(ansari_scores(6, [1, 3, 2]), [1, 8 / 3, 8 / 3, 8 / 3, 1.5, 1.5])


def test_tie_groups_must_partition():
    with pytest.raises(ValueError):
        ansari_scores(5, [2, 2])


@given(int_lists)
@settings(max_examples=200, deadline=None)
def test_midscores_match_oracle(z):
    expected = [float(v) for v in ansari_scores_sorted(z)]
    np.testing.assert_allclose(ansari_midscores(np.array(z, float)), expected, rtol=0, atol=1e-12)


@given(int_lists)
@settings(max_examples=100, deadline=None)
def test_midscores_total_is_invariant_to_ties(z):
    N = len(z)
    assert ansari_midscores(np.array(z, float)).sum() == pytest.approx(ansari_base_scores(N).sum())


def test_midscores_batch_rows_independent():
    z = np.array([[3.0, 1.0, 2.0, 2.0], [1.0, 2.0, 3.0, 4.0]])
    out = ansari_midscores(z)
    np.testing.assert_allclose(out[0], ansari_midscores(z[0]))
    np.testing.assert_allclose(out[1], [1, 2, 2, 1])


def test_pool_and_order_labels():
    s = TwoSample([3.0, 1.0], [2.0, 0.5])
    values, labels = pool_and_order(s)
    assert values.tolist() == [0.5, 1.0, 2.0, 3.0]
    assert labels.tolist() == ["Y", "X", "Y", "X"]


@given(int_lists, int_lists)
@settings(max_examples=150, deadline=None)
def test_ecdf_placements_count_ties_fully(x, y):
    fy, fx = ecdf_placements(np.array(x, float), np.array(y, float))
    exp_fy = [Fraction(sum(b <= a for b in y), len(y)) for a in x]
    exp_fx = [Fraction(sum(a <= b for a in x), len(x)) for b in y]
    np.testing.assert_allclose(fy, [float(v) for v in exp_fy], atol=1e-12)
    np.testing.assert_allclose(fx, [float(v) for v in exp_fx], atol=1e-12)


def test_half_weight_placements_average_to_u():
    s = TwoSample([1.0, 2.0, 2.0, 5.0], [2.0, 3.0, 0.0])
    p = placements(s)
    assert p.p.mean() == pytest.approx(p.q.mean())


@pytest.mark.parametrize(
    "x, y",
    [([1.0], [2.0, 3.0]), ([1.0, np.nan], [2.0, 3.0]), ([1.0, 2.0], [np.inf, 3.0]), ([[1.0, 2.0]], [1.0, 2.0])],
)
def test_invalid_samples_rejected(x, y):
    with pytest.raises(InvalidSampleError):
        TwoSample(x, y)


def test_sample_is_read_only():
    s = TwoSample([1.0, 2.0], [3.0, 4.0])
    with pytest.raises(ValueError):
        s.x[0] = 9.0
    assert s.swapped().x.tolist() == [3.0, 4.0]
