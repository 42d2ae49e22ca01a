"""Scale component: the Ansari-Bradley C statistic.

C is the sum of the Ansari scores of the Y observations.  Besides the
classical null moments this module provides the empirical variance
estimate

    var_hat(C) = s2 * n^2 (N - n) / (N (n - 1)),

where ``s2`` is the variance (divisor n) of the Y-sample scores.  It is
unbiased for the null variance over the permutation distribution and does
not assume equal medians.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._numeric import flagged_ratio, scalar
from .rank_core import TwoSample, ansari_midscores


def _check_labels(scores, labels):
    scores = np.asarray(scores, dtype=float)
    labels = np.asarray(labels, dtype=bool)
    if scores.shape[-1] != labels.shape[-1]:
        raise ValueError(
            f"scores and labels disagree in length ({scores.shape[-1]} vs {labels.shape[-1]})"
        )
    return scores, labels


def c_statistic(scores, labels):
    """Sum of scores at the Y positions (``labels`` True).

    ``labels`` may be a stack of label vectors, giving one C per row.
    """
    scores, labels = _check_labels(scores, labels)
    return scalar((scores * labels).sum(axis=-1))


def e0_c(m: int, n: int) -> float:
    N = m + n
    if m < 1 or n < 1:
        raise ValueError(f"sample sizes must be positive (m={m}, n={n})")
    if N % 2 == 0:
        return n * (N + 2) / 4
    return n * (N + 1) ** 2 / (4 * N)


def var0_c(m: int, n: int) -> float:
    """Null variance of C (no ties), separate closed forms for even and odd N."""
    N = m + n
    if m < 1 or n < 1 or N < 4:
        raise ValueError(f"null variance of C needs N >= 4 (m={m}, n={n})")
    if N % 2 == 0:
        return m * n * (N * N - 4) / (48 * (N - 1))
    return m * n * (N + 1) * (N * N + 3) / (48 * N * N)


def var_hat_from_y_scores(y_scores, n_total: int):
    """Empirical variance estimate of C from the n Y-sample scores."""
    y_scores = np.asarray(y_scores, dtype=float)
    n = y_scores.shape[-1]
    if n < 2:
        raise ValueError(f"need at least 2 Y scores, got {n}")
    s2 = y_scores.var(axis=-1)
    return s2 * n * n * (n_total - n) / (n_total * (n - 1))


def var_hat_c(scores, labels):
    """Empirical variance estimate of C for one or more label vectors."""
    scores, labels = _check_labels(scores, labels)
    counts = labels.sum(axis=-1)
    n = int(np.max(counts))
    if np.any(counts != n):
        raise ValueError("all label vectors must mark the same number of Y positions")
    N = scores.shape[-1]
    y_scores = np.broadcast_to(scores, labels.shape)[labels].reshape(labels.shape[:-1] + (n,))
    return scalar(var_hat_from_y_scores(y_scores, N))


@dataclass(frozen=True)
class CStatResult:
    c: float
    e0: float
    var0: float
    var_hat: float
    sigma_hat_sq: float
    c_star: float
    c_star_p: float

    @property
    def degenerate(self) -> bool:
        """True when the empirical variance is zero (``c_star_p`` is then a sentinel)."""
        return self.var_hat <= 0


def c_stat_result(sample: TwoSample) -> CStatResult:
    scores = ansari_midscores(sample.pooled)
    labels = sample.labels
    c = float(c_statistic(scores, labels))
    e0, v0 = e0_c(sample.m, sample.n), var0_c(sample.m, sample.n)
    vh = float(var_hat_c(scores, labels))
    return CStatResult(
        c=c,
        e0=e0,
        var0=v0,
        var_hat=vh,
        sigma_hat_sq=float(scores[labels].var()),
        c_star=(c - e0) / np.sqrt(v0),
        c_star_p=float(flagged_ratio(c - e0, np.sqrt(vh))[0]),
    )


def c_star(sample: TwoSample) -> float:
    return c_stat_result(sample).c_star


def c_star_p(sample: TwoSample) -> float:
    """C standardized by the empirical variance; signed infinity if that is zero."""
    return c_stat_result(sample).c_star_p
