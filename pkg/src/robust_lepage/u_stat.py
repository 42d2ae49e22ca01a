"""Location component: the U statistic and three estimates of its variance.

The Fligner-Policello and Fong-Huang estimators are built from the empirical
CDF placements ``F_Y(X_i)`` and ``F_X(Y_j)`` (see
:func:`~robust_lepage.rank_core.ecdf_placements`).  Placement variances use
the n - 1 divisor and the pairwise-indicator variance is estimated by
``mean(F_Y(X)) * mean(F_X(Y))``, which is ``U (1 - U)`` for tie-free data.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._numeric import flagged_ratio, scalar
from .rank_core import TwoSample, ecdf_placements, midranks

VARIANTS = ("classical", "fp", "fh")


def u_statistic(x, y):
    """Share of (X, Y) pairs with X < Y, ties counted as one half.

    Accepts stacked samples along the last axis.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    m, n = x.shape[-1], y.shape[-1]
    ranks = midranks(np.concatenate([x, y], axis=-1))
    return scalar((ranks[..., m:].sum(axis=-1) - n * (n + 1) / 2) / (m * n))


def var0_u(m: int, n: int) -> float:
    """Null variance of U under identical continuous populations."""
    if m < 1 or n < 1:
        raise ValueError(f"sample sizes must be positive (m={m}, n={n})")
    return (1.0 / m + 1.0 / n + 1.0 / (m * n)) / 12.0


def _placement_terms(fy_at_x, fx_at_y):
    m, n = fy_at_x.shape[-1], fx_at_y.shape[-1]
    if m < 2 or n < 2:
        raise ValueError(f"placement variances need m, n >= 2 (m={m}, n={n})")
    vx = fy_at_x.var(axis=-1, ddof=1)
    vy = fx_at_y.var(axis=-1, ddof=1)
    pair = fy_at_x.mean(axis=-1) * fx_at_y.mean(axis=-1)
    return m, n, vx, vy, pair


def fp_from_placements(fy_at_x, fx_at_y):
    m, n, vx, vy, pair = _placement_terms(fy_at_x, fx_at_y)
    return (1 - 1 / m) / m * vx + (1 - 1 / n) / n * vy + pair / (m * n)


def fh_from_placements(fy_at_x, fx_at_y):
    m, n, vx, vy, pair = _placement_terms(fy_at_x, fx_at_y)
    return (1 - 1 / n) / m * vx + (1 - 1 / m) / n * vy + pair / (m * n)


def var_fp(sample: TwoSample) -> float:
    """Fligner-Policello estimate of Var(U)."""
    return float(fp_from_placements(*ecdf_placements(sample.x, sample.y)))


def var_fh(sample: TwoSample) -> float:
    """Fong-Huang estimate of Var(U); equals :func:`var_fp` when m == n."""
    return float(fh_from_placements(*ecdf_placements(sample.x, sample.y)))


def null_expectation_fp(m: int, n: int) -> float:
    """Exact expectation of :func:`var_fp` for tie-free data under the strong null.

    With the n - 1 divisor each placement variance has expectation
    ``(k + 1) / (12 k)`` (k the size of the sample the CDF is built from) and
    ``E[U (1 - U)] = 1/4 - Var0(U)``.
    """
    vx, vy = (n + 1) / (12 * n), (m + 1) / (12 * m)
    return (1 - 1 / m) / m * vx + (1 - 1 / n) / n * vy + (0.25 - var0_u(m, n)) / (m * n)


def null_expectation_fh(m: int, n: int) -> float:
    """Exact expectation of :func:`var_fh` for tie-free data under the strong null."""
    vx, vy = (n + 1) / (12 * n), (m + 1) / (12 * m)
    return (1 - 1 / n) / m * vx + (1 - 1 / m) / n * vy + (0.25 - var0_u(m, n)) / (m * n)


def _variance(sample: TwoSample, variant: str) -> float:
    if variant == "classical":
        return var0_u(sample.m, sample.n)
    if variant == "fp":
        return var_fp(sample)
    if variant == "fh":
        return var_fh(sample)
    raise ValueError(f"unknown variant {variant!r}; choose from {VARIANTS}")


def standardized_u(sample: TwoSample, variant: str = "classical") -> float:
    """(U - 1/2) / sqrt(variance).

    A zero variance estimate gives a signed infinity rather than NaN; use
    :func:`u_stat_result` to get the accompanying flag.
    """
    z, _ = flagged_ratio(u_statistic(sample.x, sample.y) - 0.5, np.sqrt(_variance(sample, variant)))
    return float(z)


@dataclass(frozen=True)
class UStatResult:
    u: float
    e0: float
    var0: float
    var_fp: float
    var_fh: float

    def z(self, variant: str = "classical") -> float:
        var = {"classical": self.var0, "fp": self.var_fp, "fh": self.var_fh}[variant]
        return float(flagged_ratio(self.u - self.e0, np.sqrt(var))[0])

    @property
    def degenerate(self) -> dict[str, bool]:
        return {"classical": False, "fp": self.var_fp <= 0, "fh": self.var_fh <= 0}


def u_stat_result(sample: TwoSample) -> UStatResult:
    fy, fx = ecdf_placements(sample.x, sample.y)
    return UStatResult(
        u=float(u_statistic(sample.x, sample.y)),
        e0=0.5,
        var0=var0_u(sample.m, sample.n),
        var_fp=float(fp_from_placements(fy, fx)),
        var_fh=float(fh_from_placements(fy, fx)),
    )
