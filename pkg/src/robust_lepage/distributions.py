"""Seeded random variates for the simulation families.

Parameterizations
-----------------
exponential  (rate,)              mean 1/rate
gamma        (shape, rate)        mean shape/rate
chisq_ls     (shift, scale)       scale * chi2(2) + shift
lognormal    (meanlog, sdlog)
weibull      (shape, scale)
normal       (mean, sd)
uniform      (low, high)
logistic     (loc, scale)
laplace      (loc, scale)

Variates come from numpy's ``Generator``; the analytic CDF/quantiles used for
checks come from ``scipy.stats``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import stats

FAMILIES = {
    "exponential": ("rate",),
    "gamma": ("shape", "rate"),
    "chisq_ls": ("shift", "scale"),
    "lognormal": ("meanlog", "sdlog"),
    "weibull": ("shape", "scale"),
    "normal": ("mean", "sd"),
    "uniform": ("low", "high"),
    "logistic": ("loc", "scale"),
    "laplace": ("loc", "scale"),
}

# parameters that must be strictly positive
_POSITIVE = {"rate", "shape", "scale", "sdlog", "sd"}

# defaults used when a family is named without parameters (strong-null studies)
DEFAULT_PARAMS = {
    "exponential": (1.0,),
    "gamma": (2.0, 2.0),
    "chisq_ls": (0.0, 1.0),
    "lognormal": (0.0, 2.0),
    "weibull": (2.0, 1.0),
    "normal": (0.0, 1.0),
    "uniform": (0.0, 1.0),
    "logistic": (0.0, 1.0),
    "laplace": (0.0, 1.0),
}


@dataclass(frozen=True)
class DistributionSpec:
    family: str
    params: tuple[float, ...]

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        names = FAMILIES[self.family]
        params = tuple(float(p) for p in self.params)
        if len(params) != len(names):
            raise ValueError(f"{self.family} takes {len(names)} parameter(s) {names}, got {len(params)}")
        for name, value in zip(names, params):
            if not np.isfinite(value):
                raise ValueError(f"{self.family} parameter {name} must be finite")
            if name in _POSITIVE and value <= 0:
                raise ValueError(f"{self.family} parameter {name} must be > 0, got {value}")
        if self.family == "uniform" and params[0] >= params[1]:
            raise ValueError("uniform needs low < high")
        object.__setattr__(self, "params", params)

    @classmethod
    def of(cls, family: str, *params: float) -> "DistributionSpec":
        return cls(family, params if params else DEFAULT_PARAMS.get(family, ()))

    def frozen(self):
        """Equivalent ``scipy.stats`` frozen distribution (used for CDFs and quantiles)."""
        f, p = self.family, self.params
        if f == "exponential":
            return stats.expon(scale=1 / p[0])
        if f == "gamma":
            return stats.gamma(p[0], scale=1 / p[1])
        if f == "chisq_ls":
            return stats.chi2(2, loc=p[0], scale=p[1])
        if f == "lognormal":
            return stats.lognorm(p[1], scale=np.exp(p[0]))
        if f == "weibull":
            return stats.weibull_min(p[0], scale=p[1])
        if f == "normal":
            return stats.norm(p[0], p[1])
        if f == "uniform":
            return stats.uniform(p[0], p[1] - p[0])
        if f == "logistic":
            return stats.logistic(p[0], p[1])
        return stats.laplace(p[0], p[1])

    def __str__(self) -> str:
        return f"{self.family}({', '.join(f'{p:g}' for p in self.params)})"


@dataclass(frozen=True)
class SeededStream:
    """Independent random substream identified by ``(seed, stream)``."""

    seed: int
    stream: int = 0

    def generator(self) -> np.random.Generator:
        if self.stream < 0:
            raise ValueError("stream id must be nonnegative")
        return np.random.default_rng(np.random.SeedSequence(self.seed, spawn_key=(self.stream,)))


def draw(spec: DistributionSpec, size, rng: np.random.Generator) -> np.ndarray:
    """Draw variates of any shape from an existing generator."""
    f, p = spec.family, spec.params
    if f == "exponential":
        return rng.exponential(1 / p[0], size)
    if f == "gamma":
        return rng.gamma(p[0], 1 / p[1], size)
    if f == "chisq_ls":
        return p[1] * rng.chisquare(2, size) + p[0]
    if f == "lognormal":
        return rng.lognormal(p[0], p[1], size)
    if f == "weibull":
        return p[1] * rng.weibull(p[0], size)
    if f == "normal":
        return rng.normal(p[0], p[1], size)
    if f == "uniform":
        return rng.uniform(p[0], p[1], size)
    if f == "logistic":
        return rng.logistic(p[0], p[1], size)
    return rng.laplace(p[0], p[1], size)


def sample(spec: DistributionSpec, count, stream: SeededStream) -> np.ndarray:
    """I.i.d. draws; ``count`` is an int or a shape tuple."""
    if np.prod(count) < 1:
        raise ValueError(f"count must be at least 1, got {count}")
    return draw(spec, count, stream.generator())


def quantile_check(
    spec: DistributionSpec,
    probes: Sequence[float] = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9),
    count: int = 100_000,
    stream: SeededStream = SeededStream(0),
) -> list[dict]:
    """Compare empirical quantiles of ``count`` draws with the analytic inverse CDF."""
    xs = sample(spec, count, stream)
    dist = spec.frozen()
    rows = []
    for prob in probes:
        emp = float(np.quantile(xs, prob))
        ref = float(dist.ppf(prob))
        rows.append({"prob": prob, "empirical": emp, "analytic": ref, "abs_error": abs(emp - ref)})
    return rows
