"""Lepage-type location-scale statistics L0 ... L5.

Each statistic is a sum of two squared standardized components::

    L = (U - 1/2)^2 / V_U + (C - E0(C))^2 / V_C

=====  =================  ==================
name   V_U                V_C
=====  =================  ==================
L0     null variance      null variance
L1     Fligner-Policello  null variance
L2     Fong-Huang         null variance
L3     null variance      empirical estimate
L4     Fligner-Policello  empirical estimate
L5     Fong-Huang         empirical estimate
=====  =================  ==================

The asymptotic reference distribution is chi-square with 2 degrees of
freedom.  A zero variance estimate makes the statistic ``+inf`` (flagged)
instead of NaN.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._numeric import flagged_ratio
from .c_stat import CStatResult, c_stat_result, e0_c, var0_c, var_hat_from_y_scores
from .rank_core import TwoSample, ansari_midscores, ecdf_placements
from .u_stat import UStatResult, fh_from_placements, fp_from_placements, u_stat_result, u_statistic, var0_u

LEPAGE_STATISTICS = ("L0", "L1", "L2", "L3", "L4", "L5")
STANDARDIZED_STATISTICS = ("U*", "U*_FP", "U*_FH", "C*", "C*_P")
ALL_STATISTICS = LEPAGE_STATISTICS + STANDARDIZED_STATISTICS

# (location variance, scale variance) used by each quadratic statistic
COMPONENTS = {
    "L0": ("classical", "classical"),
    "L1": ("fp", "classical"),
    "L2": ("fh", "classical"),
    "L3": ("classical", "hat"),
    "L4": ("fp", "hat"),
    "L5": ("fh", "hat"),
}

CHISQ2_CRITICAL_05 = 2.0 * np.log(20.0)  # 5.9915


def chisq2_sf(value: float) -> float:
    """Upper tail probability of a chi-square variable with 2 degrees of freedom."""
    if value < 0:
        raise ValueError(f"chi-square statistic must be nonnegative, got {value}")
    return float(np.exp(-value / 2.0))


def check_statistic(stat: str) -> str:
    if stat not in ALL_STATISTICS:
        raise ValueError(f"unknown statistic {stat!r}; choose from {', '.join(ALL_STATISTICS)}")
    return stat


def statistics_batch(x, y, stats=LEPAGE_STATISTICS):
    """Evaluate several statistics on one or many two-sample problems.

    Parameters
    ----------
    x, y : array_like
        Samples along the last axis; leading axes index independent
        problems (replications or permutations).
    stats : sequence of str
        Names from :data:`ALL_STATISTICS`.

    Returns
    -------
    values, degenerate : dict
        Both keyed by statistic name; arrays with the leading shape of the
        inputs.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    m, n = x.shape[-1], y.shape[-1]
    N = m + n
    for s in stats:
        check_statistic(s)

    u_dev = u_statistic(x, y) - 0.5
    fy, fx = ecdf_placements(x, y)
    u_var = {
        "classical": np.full(np.shape(u_dev), var0_u(m, n)),
        "fp": fp_from_placements(fy, fx),
        "fh": fh_from_placements(fy, fx),
    }
    y_scores = ansari_midscores(np.concatenate([x, y], axis=-1))[..., m:]
    c_dev = y_scores.sum(axis=-1) - e0_c(m, n)
    c_var = {
        "classical": np.full(np.shape(c_dev), var0_c(m, n)),
        "hat": var_hat_from_y_scores(y_scores, N),
    }

    values, degenerate = {}, {}
    for s in stats:
        if s in COMPONENTS:
            uv, cv = COMPONENTS[s]
            a, da = flagged_ratio(u_dev**2, u_var[uv])
            b, db = flagged_ratio(c_dev**2, c_var[cv])
            values[s], degenerate[s] = a + b, da | db
        else:
            num, var = {
                "U*": (u_dev, u_var["classical"]),
                "U*_FP": (u_dev, u_var["fp"]),
                "U*_FH": (u_dev, u_var["fh"]),
                "C*": (c_dev, c_var["classical"]),
                "C*_P": (c_dev, c_var["hat"]),
            }[s]
            values[s], degenerate[s] = flagged_ratio(num, np.sqrt(np.maximum(var, 0.0)))
    return values, degenerate


@dataclass(frozen=True)
class LepageSuite:
    l: tuple[float, ...]
    p_asymptotic: tuple[float, ...]
    u: UStatResult
    c: CStatResult
    degenerate: tuple[bool, ...]

    def __getitem__(self, name: str) -> float:
        return self.l[LEPAGE_STATISTICS.index(name)]

    def as_dict(self) -> dict:
        return {
            name: {"statistic": v, "p_asymptotic": p, "degenerate": d}
            for name, v, p, d in zip(LEPAGE_STATISTICS, self.l, self.p_asymptotic, self.degenerate)
        }


def lepage_suite(sample: TwoSample) -> LepageSuite:
    """All six statistics with their asymptotic p-values for one data set."""
    u = u_stat_result(sample)
    c = c_stat_result(sample)
    u_var = {"classical": u.var0, "fp": u.var_fp, "fh": u.var_fh}
    c_var = {"classical": c.var0, "hat": c.var_hat}
    stats, flags = [], []
    for name in LEPAGE_STATISTICS:
        uv, cv = COMPONENTS[name]
        a, da = flagged_ratio((u.u - u.e0) ** 2, u_var[uv])
        b, db = flagged_ratio((c.c - c.e0) ** 2, c_var[cv])
        stats.append(float(a + b))
        flags.append(bool(da or db))
    return LepageSuite(
        l=tuple(stats),
        p_asymptotic=tuple(chisq2_sf(v) for v in stats),
        u=u,
        c=c,
        degenerate=tuple(flags),
    )
