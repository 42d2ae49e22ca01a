import math

import pytest

from robust_lepage.distributions import DistributionSpec
from robust_lepage.lepage import CHISQ2_CRITICAL_05
from robust_lepage.permutation import PUBLISHED_CRITICAL_VALUES
from robust_lepage.simulation import (
    MissingCriticalValues,
    SimConfig,
    null_quantile_check,
    resolve_cutoffs,
    run_study,
    validate_var_c,
)

EXP = DistributionSpec.of("exponential", 0.5)


def _cfg(m=10, n=10, **kw):
    kw.setdefault("replications", 4_000)
    return SimConfig(EXP, kw.pop("g", EXP), m, n, **kw)


def test_cutoff_policy_resolution():
    cuts, src = resolve_cutoffs(_cfg())
    assert src == "table" and cuts["L0"] == PUBLISHED_CRITICAL_VALUES[(10, 10)][0]
    cuts, src = resolve_cutoffs(_cfg(40, 30))
    assert src == "asymptotic" and cuts["L5"] == pytest.approx(CHISQ2_CRITICAL_05)
    cuts, src = resolve_cutoffs(_cfg(12, 9, perms=5_000, stats=("L0",)))
    assert src == "permutation" and 4.5 < cuts["L0"] < 7.0
    with pytest.raises(MissingCriticalValues):
        resolve_cutoffs(_cfg(12, 9, cutoffs="table"))


def test_null_size_near_nominal():
    res = run_study(_cfg(replications=20_000, seed=3))
    for s, r in res.rates.items():
        assert abs(r - 0.05) < 4 * math.sqrt(0.05 * 0.95 / 20_000) + 0.006, s


def test_worker_count_does_not_change_counts():
    cfg = _cfg(g=DistributionSpec.of("exponential", 1.5), replications=5_000, seed=7)
    assert run_study(cfg, workers=1).rejections == run_study(cfg, workers=4).rejections


def test_given_cutoffs_override():
    res = run_study(_cfg(replications=500), cutoffs={s: math.inf for s in ("L0", "L1", "L2", "L3", "L4", "L5")})
    assert res.cutoff_source == "given" and all(k == 0 for k in res.rejections.values())


@pytest.mark.parametrize(
    "kwargs",
    [dict(m=1), dict(replications=10), dict(alpha=1.5), dict(cutoffs="magic"), dict(stats=("L7",))],
)
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        _cfg(**kwargs)


def test_validate_var_c_small():
    chk = validate_var_c(6, 6, "logistic", replications=4_000, seed=2)
    assert abs(chk.relative_error) < 0.05
    assert chk.standard_error > 0


def test_null_quantiles_cover_reference_for_large_samples():
    rows = null_quantile_check("C*_P", 40, 40, replications=8_000, seed=5, levels=(0.95,))
    (row,) = rows
    assert row.lower <= row.empirical <= row.upper
    assert abs(row.empirical - row.reference) < 0.1
