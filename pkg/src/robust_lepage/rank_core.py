"""Pooling, ranking, Ansari scores and placements shared by every statistic.

Most helpers here work along the last axis, so the same code evaluates one
two-sample problem or a stack of them (simulation replications, permuted
label assignments).  Ties are handled with midranks / midscores; the
empirical CDF placements count equal values with full weight.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.stats import rankdata


class InvalidSampleError(ValueError):
    """Raised when a two-sample input violates the size or finiteness rules."""


def _as_vector(values, name: str) -> np.ndarray:
    try:
        arr = np.asarray(values, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InvalidSampleError(f"{name} must be a sequence of real numbers") from exc
    if arr.ndim != 1:
        raise InvalidSampleError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidSampleError(f"{name} contains NaN or infinite values")
    return arr


@dataclass(frozen=True)
class TwoSample:
    """Two independent samples; ``x`` has size m and ``y`` has size n."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = _as_vector(self.x, "x")
        y = _as_vector(self.y, "y")
        if x.size < 2 or y.size < 2:
            raise InvalidSampleError(
                f"each sample needs at least 2 values (got m={x.size}, n={y.size})"
            )
        x.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def m(self) -> int:
        return int(self.x.size)

    @property
    def n(self) -> int:
        return int(self.y.size)

    @property
    def N(self) -> int:
        return self.m + self.n

    @property
    def pooled(self) -> np.ndarray:
        """X values followed by Y values, in input order."""
        return np.concatenate([self.x, self.y])

    @property
    def labels(self) -> np.ndarray:
        """Boolean mask over :attr:`pooled`; True marks a Y observation."""
        return np.r_[np.zeros(self.m, dtype=bool), np.ones(self.n, dtype=bool)]

    def swapped(self) -> "TwoSample":
        return TwoSample(self.y, self.x)


def pool_and_order(sample: TwoSample) -> tuple[np.ndarray, np.ndarray]:
    """Sort the pooled sample.

    Returns the N sorted values and a matching array of ``"X"``/``"Y"``
    labels.  Order among tied values is not meaningful.
    """
    values = sample.pooled
    order = np.argsort(values, kind="stable")
    labels = np.where(sample.labels, "Y", "X")
    return values[order], labels[order]


def ansari_base_scores(n_total: int) -> np.ndarray:
    """Scores 1, 2, ..., 2, 1 assigned inward from both ends of N ordered positions."""
    if n_total < 2:
        raise ValueError(f"need at least 2 positions, got {n_total}")
    pos = np.arange(1, n_total + 1)
    return np.minimum(pos, n_total + 1 - pos).astype(float)


def ansari_scores(n_total: int, tie_groups: Sequence[int] | None = None) -> np.ndarray:
    """Ansari scores for ``n_total`` ordered positions.

    Parameters
    ----------
    n_total : int
        Pooled sample size N (at least 2).
    tie_groups : sequence of int, optional
        Lengths of the consecutive runs of equal values, in order.  They
        must sum to ``n_total``.  Each run receives the mean of its base
        scores.  ``None`` means no ties.
    """
    base = ansari_base_scores(n_total)
    if tie_groups is None:
        return base
    runs = [int(r) for r in tie_groups]
    if any(r < 1 for r in runs) or sum(runs) != n_total:
        raise ValueError(f"tie_groups {runs} do not partition {n_total} positions")
    out = np.empty_like(base)
    start = 0
    for r in runs:
        out[start:start + r] = base[start:start + r].mean()
        start += r
    return out


def midranks(z) -> np.ndarray:
    """Average ranks along the last axis."""
    return rankdata(z, method="average", axis=-1)


def ansari_midscores(z) -> np.ndarray:
    """Ansari score of every value of ``z`` (last axis is the pooled sample).

    Returned in the input order, not the sorted order.  A run of tied values
    shares the mean of the base scores its positions would receive.
    """
    z = np.asarray(z, dtype=float)
    N = z.shape[-1]
    lo = rankdata(z, method="min", axis=-1)
    hi = rankdata(z, method="max", axis=-1)
    cum = np.concatenate([[0.0], np.cumsum(ansari_base_scores(N))])
    return (cum[hi] - cum[lo - 1]) / (hi - lo + 1)


@dataclass(frozen=True)
class PlacementVectors:
    """Placements with equal values counted as one half.

    ``p[i]`` is the share of Y above ``x[i]`` and ``q[j]`` the share of X
    below ``y[j]``; both have mean U.
    """

    p: np.ndarray
    q: np.ndarray


def placements(sample: TwoSample) -> PlacementVectors:
    x, y = sample.x, sample.y
    above = (y[None, :] > x[:, None]) + 0.5 * (y[None, :] == x[:, None])
    return PlacementVectors(p=above.mean(axis=1), q=above.mean(axis=0))


def ecdf_placements(x, y) -> tuple[np.ndarray, np.ndarray]:
    """Empirical CDF of each sample evaluated at the other one.

    Returns ``(fy_at_x, fx_at_y)`` where ``fy_at_x[..., i] = #{Y <= X_i} / n``
    and ``fx_at_y[..., j] = #{X <= Y_j} / m``.  Works on stacked samples
    along the last axis.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    m, n = x.shape[-1], y.shape[-1]
    pooled_hi = rankdata(np.concatenate([x, y], axis=-1), method="max", axis=-1)
    own_x = rankdata(x, method="max", axis=-1)
    own_y = rankdata(y, method="max", axis=-1)
    return (pooled_hi[..., :m] - own_x) / n, (pooled_hi[..., m:] - own_y) / m
