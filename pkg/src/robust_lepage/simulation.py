"""Monte Carlo size/power studies and null-distribution checks.

Replications are generated in blocks of :data:`BLOCK_SIZE`; block ``b``
draws X then Y from the substream ``(seed, b)``.  Only rejection counts are
aggregated, so the result is the same for any number of workers.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np
from scipy import stats as sps

from .c_stat import var0_c, var_hat_c
from .distributions import DistributionSpec, SeededStream, draw
from .lepage import LEPAGE_STATISTICS, check_statistic, statistics_batch
from .permutation import PUBLISHED_CRITICAL_VALUES, _exact_blocks, _run_blocks, _tol, critical_values, rank_sample
from .rank_core import ansari_midscores

BLOCK_SIZE = 2_000
CUTOFF_POLICIES = ("auto", "table", "asymptotic", "permutation")


class MissingCriticalValues(ValueError):
    pass


@dataclass(frozen=True)
class SimConfig:
    f_spec: DistributionSpec
    g_spec: DistributionSpec
    m: int
    n: int
    replications: int = 10_000
    alpha: float = 0.05
    cutoffs: str = "auto"
    perms: int = 100_000
    seed: int = 20250101
    stats: tuple[str, ...] = LEPAGE_STATISTICS

    def __post_init__(self):
        if self.m < 2 or self.n < 2:
            raise ValueError(f"m and n must be at least 2 (m={self.m}, n={self.n})")
        if self.replications < 100:
            raise ValueError(f"replications must be at least 100, got {self.replications}")
        if not 0 < self.alpha < 1:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.cutoffs not in CUTOFF_POLICIES:
            raise ValueError(f"cutoffs must be one of {CUTOFF_POLICIES}, got {self.cutoffs!r}")
        object.__setattr__(self, "stats", tuple(check_statistic(s) for s in self.stats))


@dataclass(frozen=True)
class SimResult:
    config: SimConfig
    cutoffs: dict[str, float]
    cutoff_source: str
    rejections: dict[str, int]
    elapsed: float = field(compare=False)

    @property
    def rates(self) -> dict[str, float]:
        return {s: k / self.config.replications for s, k in self.rejections.items()}

    @property
    def standard_errors(self) -> dict[str, float]:
        R = self.config.replications
        return {s: math.sqrt(r * (1 - r) / R) for s, r in self.rates.items()}


def _permutation_seed(seed: int) -> int:
    # separate namespace from the replication substreams
    return int(np.random.SeedSequence(seed, spawn_key=(2**31,)).generate_state(1)[0])


def resolve_cutoffs(config: SimConfig, workers: int = 1) -> tuple[dict[str, float], str]:
    """Critical values for each statistic and the name of the policy that produced them."""
    policy = config.cutoffs
    key = (config.m, config.n)
    lepage_only = all(s in LEPAGE_STATISTICS for s in config.stats)
    if policy == "auto":
        if key in PUBLISHED_CRITICAL_VALUES and config.alpha == 0.05 and lepage_only:
            policy = "table"
        elif min(key) >= 30 and lepage_only:
            policy = "asymptotic"
        else:
            policy = "permutation"
    if policy == "table":
        if key not in PUBLISHED_CRITICAL_VALUES or config.alpha != 0.05 or not lepage_only:
            raise MissingCriticalValues(
                f"no tabulated critical values for (m, n)={key} at alpha={config.alpha}; "
                "use cutoffs='permutation' to compute them"
            )
        row = dict(zip(LEPAGE_STATISTICS, PUBLISHED_CRITICAL_VALUES[key]))
        return {s: row[s] for s in config.stats}, policy
    if policy == "asymptotic":
        if not lepage_only:
            raise ValueError("asymptotic cutoffs are only defined here for L0..L5")
        c = float(sps.chi2.isf(config.alpha, 2))
        return {s: c for s in config.stats}, policy
    cv = critical_values(
        config.m,
        config.n,
        config.alpha,
        stats=config.stats,
        replications=config.perms,
        seed=_permutation_seed(config.seed),
        workers=workers,
    )
    return cv, policy


def _block_sizes(total: int) -> list[int]:
    return [min(BLOCK_SIZE, total - start) for start in range(0, total, BLOCK_SIZE)]


def _draw_block(f_spec, g_spec, m, n, size, seed, block):
    rng = SeededStream(seed, block).generator()
    return draw(f_spec, (size, m), rng), draw(g_spec, (size, n), rng)


def run_study(config: SimConfig, workers: int = 1, cutoffs: dict[str, float] | None = None) -> SimResult:
    """Rejection rates of each statistic over ``config.replications`` data sets.

    A data set is rejected when the statistic is at least its cutoff.
    ``cutoffs`` overrides the configured policy.
    """
    start = time.perf_counter()
    if cutoffs is None:
        cutoffs, source = resolve_cutoffs(config, workers)
    else:
        source = "given"
    cuts = {s: float(cutoffs[s]) for s in config.stats}
    sizes = _block_sizes(config.replications)

    def one(b):
        x, y = _draw_block(config.f_spec, config.g_spec, config.m, config.n, sizes[b], config.seed, b)
        values, _ = statistics_batch(x, y, config.stats)
        return {s: int(np.count_nonzero(values[s] >= cuts[s] - _tol(cuts[s]))) for s in config.stats}

    counts = _run_blocks(one, range(len(sizes)), workers)
    rejections = {s: sum(c[s] for c in counts) for s in config.stats}
    return SimResult(config, cuts, source, rejections, time.perf_counter() - start)


@dataclass(frozen=True)
class VarCCheck:
    m: int
    n: int
    family: str
    replications: int
    mean_var_hat: float
    standard_error: float
    var0: float

    @property
    def relative_error(self) -> float:
        return self.mean_var_hat / self.var0 - 1


def validate_var_c(
    m: int, n: int, family: str = "logistic", replications: int = 10_000, seed: int = 1, workers: int = 1
) -> VarCCheck:
    """Average of the empirical C-variance estimate under the strong null vs. the null variance."""
    spec = DistributionSpec.of(family)
    sizes = _block_sizes(replications)

    def one(b):
        x, y = _draw_block(spec, spec, m, n, sizes[b], seed, b)
        scores = ansari_midscores(np.concatenate([x, y], axis=-1))
        labels = np.broadcast_to(np.r_[np.zeros(m, bool), np.ones(n, bool)], scores.shape)
        return np.atleast_1d(var_hat_c(scores, labels))

    v = np.concatenate(_run_blocks(one, range(len(sizes)), workers))
    return VarCCheck(m, n, family, replications, float(v.mean()), float(v.std(ddof=1) / math.sqrt(v.size)), var0_c(m, n))


def enumerate_var_c(m: int, n: int) -> tuple[float, float]:
    """Mean of the empirical C-variance estimate over every label assignment, and the null variance."""
    scores = ansari_midscores(rank_sample(m, n).pooled)
    total, count = 0.0, 0
    for masks in _exact_blocks(m + n, n):
        total += float(np.sum(var_hat_c(scores, masks)))
        count += masks.shape[0]
    return total / count, var0_c(m, n)


@dataclass(frozen=True)
class QuantileRow:
    level: float
    empirical: float
    lower: float
    upper: float
    reference: float


def null_quantile_check(
    statistic: str,
    m: int,
    n: int,
    family: str = "normal",
    replications: int = 10_000,
    seed: int = 1,
    levels=(0.90, 0.95, 0.99),
    workers: int = 1,
) -> list[QuantileRow]:
    """Empirical null quantiles of a statistic against its asymptotic reference.

    The reference is N(0, 1) for standardized statistics and chi-square(2)
    for L0..L5.  ``lower``/``upper`` bracket each quantile with a 95%
    distribution-free order-statistic interval.
    """
    check_statistic(statistic)
    spec = DistributionSpec.of(family)
    sizes = _block_sizes(replications)

    def one(b):
        x, y = _draw_block(spec, spec, m, n, sizes[b], seed, b)
        return statistics_batch(x, y, (statistic,))[0][statistic]

    v = np.sort(np.concatenate(_run_blocks(one, range(len(sizes)), workers)))
    R = v.size
    ref = sps.chi2(2) if statistic in LEPAGE_STATISTICS else sps.norm()
    rows = []
    for level in levels:
        k = int(math.ceil(level * R)) - 1
        half = 1.96 * math.sqrt(R * level * (1 - level))
        lo, hi = max(int(math.floor(k - half)), 0), min(int(math.ceil(k + half)), R - 1)
        rows.append(QuantileRow(level, float(v[k]), float(v[lo]), float(v[hi]), float(ref.ppf(level))))
    return rows
