"""Permutation null distributions, critical values and p-values.

Label assignments are either enumerated exhaustively (all C(N, n) ways of
choosing the Y positions, lexicographic order) or drawn uniformly at random.
Random draws are produced in fixed-size blocks and block ``b`` always uses
the substream ``(seed, b)``, so results do not depend on how blocks are
spread across worker threads.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .distributions import SeededStream
from .lepage import LEPAGE_STATISTICS, check_statistic, statistics_batch
from .rank_core import TwoSample

ENUMERATION_CAP = 200_000
BLOCK_SIZE = 5_000
_REL_TOL = 1e-9

# Published 5% critical values (m, n) -> L0..L5
PUBLISHED_CRITICAL_VALUES = {
    (5, 5): (5.3345, 8.8948, 8.8948, 7.2012, 10.3906, 10.3906),
    (6, 5): (5.5269, 7.7793, 7.9803, 7.7727, 12.4460, 12.4467),
    (6, 6): (5.7692, 6.8571, 6.8571, 6.8173, 11.2084, 11.2084),
    (7, 5): (5.5720, 7.9068, 7.9068, 8.5803, 11.5886, 11.5886),
    (7, 7): (5.6541, 6.8855, 6.8855, 7.0367, 9.0802, 9.0802),
    (8, 5): (5.5037, 7.5440, 7.4924, 8.6301, 12.2734, 12.2084),
    (8, 8): (5.6775, 6.6280, 6.6280, 6.8773, 8.3711, 8.3711),
    (9, 5): (5.4444, 7.2574, 7.2574, 8.3956, 12.0756, 12.0756),
    (10, 5): (5.4468, 7.3250, 7.3355, 9.0133, 11.6773, 11.6655),
    (10, 10): (5.7436, 6.5719, 6.5719, 6.5545, 7.5905, 7.5905),
}


class EnumerationTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class PermutationNull:
    statistic: str
    m: int
    n: int
    mode: str  # "exact" or "monte_carlo"
    values: np.ndarray = field(repr=False)  # sorted ascending
    replications: int | None = None
    seed: int | None = None

    @property
    def count(self) -> int:
        return int(self.values.size)


def _tol(t):
    t = np.asarray(t, dtype=float)
    return np.where(np.isfinite(t), _REL_TOL * np.maximum(1.0, np.abs(t)), 0.0)


def _evaluate(z, y_masks, stats, m):
    order = np.argsort(y_masks, axis=1, kind="stable")  # X positions first
    values, _ = statistics_batch(z[order[:, :m]], z[order[:, m:]], stats)
    return values


def _exact_blocks(N, n):
    combos = itertools.combinations(range(N), n)
    while True:
        chunk = np.fromiter(
            itertools.chain.from_iterable(itertools.islice(combos, BLOCK_SIZE)), dtype=np.intp
        )
        if chunk.size == 0:
            return
        idx = chunk.reshape(-1, n)
        masks = np.zeros((idx.shape[0], N), dtype=bool)
        np.put_along_axis(masks, idx, True, axis=1)
        yield masks


def _random_block(N, n, size, seed, block):
    rng = SeededStream(seed, block).generator()
    perms = rng.permuted(np.tile(np.arange(N), (size, 1)), axis=1)
    masks = np.zeros((size, N), dtype=bool)
    np.put_along_axis(masks, perms[:, :n], True, axis=1)
    return masks


def _run_blocks(fn, jobs, workers):
    if workers <= 1:
        return [fn(j) for j in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs))


def permutation_nulls(
    sample: TwoSample,
    stats=LEPAGE_STATISTICS,
    mode: str = "monte_carlo",
    replications: int = 100_000,
    seed: int | None = None,
    workers: int = 1,
    cap: int = ENUMERATION_CAP,
) -> dict[str, PermutationNull]:
    """Permutation distributions of several statistics from one set of label draws.

    ``mode="exact"`` enumerates every assignment (refused above ``cap``);
    ``mode="monte_carlo"`` draws ``replications`` assignments and needs a
    seed.
    """
    stats = tuple(check_statistic(s) for s in stats)
    m, n, N = sample.m, sample.n, sample.N
    z = sample.pooled
    if mode == "exact":
        total = math.comb(N, n)
        if total > cap:
            raise EnumerationTooLarge(
                f"exact enumeration needs {total} assignments (cap {cap}); use Monte Carlo mode"
            )
        blocks = _run_blocks(lambda masks: _evaluate(z, masks, stats, m), _exact_blocks(N, n), workers)
        reps, seed_used = None, None
    elif mode == "monte_carlo":
        if seed is None:
            raise ValueError("Monte Carlo permutation needs a seed")
        if replications < 1:
            raise ValueError("replications must be at least 1")
        sizes = [min(BLOCK_SIZE, replications - start) for start in range(0, replications, BLOCK_SIZE)]
        blocks = _run_blocks(
            lambda b: _evaluate(z, _random_block(N, n, sizes[b], seed, b), stats, m),
            range(len(sizes)),
            workers,
        )
        reps, seed_used = replications, seed
    else:
        raise ValueError(f"mode must be 'exact' or 'monte_carlo', got {mode!r}")
    out = {}
    for s in stats:
        values = np.sort(np.concatenate([blk[s] for blk in blocks]))
        values.setflags(write=False)
        out[s] = PermutationNull(s, m, n, mode, values, reps, seed_used)
    return out


def permutation_null(sample: TwoSample, statistic: str = "L0", **kwargs) -> PermutationNull:
    return permutation_nulls(sample, (statistic,), **kwargs)[statistic]


def atoms(null: PermutationNull) -> np.ndarray:
    """Distinct support points, merging values equal up to rounding noise."""
    v = null.values
    if v.size == 0:
        return v
    with np.errstate(invalid="ignore"):
        gaps = np.diff(v)  # inf - inf -> nan, kept as distinct below
    keep = np.r_[True, ~(gaps <= _tol(v[1:]))]
    keep[1:] &= ~(np.isinf(v[1:]) & (v[1:] == v[:-1]))
    return v[keep]


def upper_tail_counts(null: PermutationNull, t) -> np.ndarray:
    """Number of null values >= t (with rounding tolerance)."""
    t = np.asarray(t, dtype=float)
    return null.count - np.searchsorted(null.values, t - _tol(t), side="left")


def critical_value(null: PermutationNull, alpha: float = 0.05) -> float:
    """Smallest null value t with P(T >= t) <= alpha; ``inf`` if none qualifies."""
    if not 0 < alpha < 1:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    if null.count == 0:
        raise ValueError("empty null distribution")
    support = atoms(null)
    ok = np.nonzero(upper_tail_counts(null, support) <= alpha * null.count + 1e-9)[0]
    return float(support[ok[0]]) if ok.size else float("inf")


def quantile(null: PermutationNull, level: float = 0.95) -> float:
    """Inverse empirical CDF at ``level`` (smallest t with P(T <= t) >= level)."""
    if not 0 < level < 1:
        raise ValueError(f"level must lie in (0, 1), got {level}")
    k = int(math.ceil(level * null.count - 1e-9))
    return float(null.values[max(k, 1) - 1])


def perm_p_value(null: PermutationNull, observed: float) -> float:
    """Right-tail p-value; add-one estimator in Monte Carlo mode."""
    hits = int(upper_tail_counts(null, observed))
    if null.mode == "exact":
        return hits / null.count
    return (hits + 1) / (null.count + 1)


def rank_sample(m: int, n: int) -> TwoSample:
    """Tie-free reference sample: the permutation null of a rank statistic depends only on (m, n)."""
    return TwoSample(np.arange(1.0, m + 1), np.arange(m + 1.0, m + n + 1))


def critical_values(
    m: int,
    n: int,
    alpha: float = 0.05,
    stats=LEPAGE_STATISTICS,
    mode: str = "monte_carlo",
    replications: int = 100_000,
    seed: int | None = None,
    workers: int = 1,
) -> dict[str, float]:
    """Permutation critical values for continuous (tie-free) data of sizes m, n."""
    nulls = permutation_nulls(
        rank_sample(m, n), stats, mode=mode, replications=replications, seed=seed, workers=workers
    )
    return {s: critical_value(nulls[s], alpha) for s in stats}
