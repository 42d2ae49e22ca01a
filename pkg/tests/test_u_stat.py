import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import permutation_moments, placement_variances, u_pairs
from robust_lepage.distributions import DistributionSpec, SeededStream, sample
from robust_lepage.rank_core import TwoSample, ecdf_placements
from robust_lepage.u_stat import (
    fh_from_placements,
    fp_from_placements,
    null_expectation_fh,
    null_expectation_fp,
    standardized_u,
    u_stat_result,
    u_statistic,
    var0_u,
    var_fh,
    var_fp,
)

int_lists = st.lists(st.integers(-6, 6), min_size=2, max_size=10)


def test_worked_example():
    s = TwoSample([1.0, 3.0], [2.0, 4.0])
    assert u_statistic(s.x, s.y) == 0.75
    assert var0_u(2, 2) == pytest.approx(1.25 / 12)
    # fy = [0, .5], fx = [.5, 1], both variances .125, pair term .1875
    assert var_fp(s) == pytest.approx(0.109375)
    assert var_fh(s) == pytest.approx(0.109375)


@given(int_lists, int_lists)
@settings(max_examples=200, deadline=None)
def test_u_and_placement_variances_match_oracle(x, y):
    xa, ya = np.array(x, float), np.array(y, float)
    assert u_statistic(xa, ya) == pytest.approx(float(u_pairs(x, y)), abs=1e-12)
    fp, fh = placement_variances(x, y)
    s = TwoSample(xa, ya)
    assert var_fp(s) == pytest.approx(float(fp), abs=1e-12)
    assert var_fh(s) == pytest.approx(float(fh), abs=1e-12)


@pytest.mark.parametrize("m, n", [(2, 2), (3, 4), (5, 3)])
def test_var0_u_is_permutation_variance(m, n):
    mom = permutation_moments(m, n)
    assert mom["e_u"] == 0.5
    assert var0_u(m, n) == pytest.approx(float(mom["var_u"]), rel=1e-13)


def test_fp_equals_fh_for_equal_sizes():
    rng = np.random.default_rng(3)
    x, y = rng.exponential(size=(50, 8)), rng.exponential(2.0, size=(50, 8))
    fy, fx = ecdf_placements(x, y)
    np.testing.assert_allclose(fp_from_placements(fy, fx), fh_from_placements(fy, fx))


@pytest.mark.parametrize("m, n", [(10, 10), (12, 7)])
def test_null_expectations_by_monte_carlo(m, n):
    spec = DistributionSpec.of("normal")
    x = sample(spec, (40_000, m), SeededStream(11, 0))
    y = sample(spec, (40_000, n), SeededStream(11, 1))
    fy, fx = ecdf_placements(x, y)
    for est, exact in ((fp_from_placements(fy, fx), null_expectation_fp(m, n)),
                       (fh_from_placements(fy, fx), null_expectation_fh(m, n))):
        se = est.std(ddof=1) / np.sqrt(est.size)
        assert abs(est.mean() - exact) < 4 * se


@pytest.mark.parametrize("m, n", [(10, 10), (40, 30), (8, 20)])
def test_null_expectations_close_to_classical(m, n):
    # the estimators exceed var0_u only at order 1 / (mn)
    for e in (null_expectation_fp(m, n), null_expectation_fh(m, n)):
        assert abs(e - var0_u(m, n)) < 1.0 / (m * n)


def test_complete_separation_is_flagged():
    s = TwoSample([1.0, 2.0], [3.0, 4.0])
    r = u_stat_result(s)
    assert r.var_fp == 0 and r.degenerate["fp"]
    assert standardized_u(s, "fp") == np.inf
    assert standardized_u(TwoSample([3.0, 4.0], [1.0, 2.0]), "fh") == -np.inf


def test_unknown_variant():
    with pytest.raises(ValueError):
        standardized_u(TwoSample([1.0, 3.0], [2.0, 4.0]), "welch")


def test_var0_u_rejects_empty():
    with pytest.raises(ValueError):
        var0_u(0, 3)
