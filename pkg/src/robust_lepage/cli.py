"""``lepage`` command line interface.

Subcommands: ``test``, ``critvals``, ``simulate``, ``validate-varc`` and
``quantiles``.  Exit status is 0 whenever the command completes, whatever
the test outcome.
"""

from __future__ import annotations

import argparse
import logging
import math
import os
import sys

import numpy as np

from .datasets import BUILTIN, builtin_dataset
from .distributions import FAMILIES
from .fileio import FORMATS, Report, load_sim_config, load_two_column, render
from .lepage import ALL_STATISTICS, LEPAGE_STATISTICS, lepage_suite, statistics_batch
from .permutation import (
    PUBLISHED_CRITICAL_VALUES,
    critical_value,
    perm_p_value,
    permutation_nulls,
    quantile,
    rank_sample,
)
from .simulation import enumerate_var_c, null_quantile_check, run_study, validate_var_c

log = logging.getLogger("robust_lepage")

SEED_ENV = "LEPAGE_SEED"
DEFAULT_SEED = 12345


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"error: {SEED_ENV}={raw!r} is not an integer")


def _stat_list(text: str, allowed=ALL_STATISTICS) -> tuple[str, ...]:
    names = tuple(s.strip() for s in text.split(",") if s.strip())
    bad = [s for s in names if s not in allowed]
    if bad or not names:
        raise argparse.ArgumentTypeError(f"unknown statistic(s) {bad}; choose from {', '.join(allowed)}")
    return names


def _summary(values, precision) -> str:
    q1, med, q3 = np.percentile(values, [25, 50, 75])
    f = lambda v: f"{v:.{precision}f}"
    return f"n={len(values)} median={f(med)} IQR=[{f(q1)}, {f(q3)}] min={f(np.min(values))} max={f(np.max(values))}"


def cmd_test(args) -> Report:
    if args.dataset:
        ds = builtin_dataset(args.dataset)
        sample, labels, name = ds.sample, (ds.x_label, ds.y_label), ds.name
        if args.x_label is not None:
            if args.x_label not in labels:
                raise ValueError(f"x label {args.x_label!r} not in {labels}")
            if args.x_label == labels[1]:
                sample, labels = sample.swapped(), labels[::-1]
    else:
        sample, labels = load_two_column(args.input, args.x_label)
        name = str(args.input)
    stats = args.stats or LEPAGE_STATISTICS
    suite = lepage_suite(sample)
    values, flags = statistics_batch(sample.x, sample.y, stats)

    p_perm = {}
    if args.method in ("perm", "both"):
        mode = "exact" if args.exact else "monte_carlo"
        nulls = permutation_nulls(
            sample, stats, mode=mode, replications=args.perms, seed=args.seed, workers=args.workers
        )
        p_perm = {s: perm_p_value(nulls[s], float(values[s])) for s in stats}

    columns = ["statistic", "value"]
    if args.method in ("asymptotic", "both"):
        columns.append("p_asymptotic")
    if args.method in ("perm", "both"):
        columns.append("p_permutation")
    columns.append("degenerate")
    rows = []
    for s in stats:
        v = float(values[s])
        row = [s, v]
        if args.method in ("asymptotic", "both"):
            if s in LEPAGE_STATISTICS:
                row.append(suite.p_asymptotic[LEPAGE_STATISTICS.index(s)])
            else:
                row.append(math.erfc(v / math.sqrt(2)) / 2)  # upper tail of N(0, 1)
        if args.method in ("perm", "both"):
            row.append(p_perm[s])
        row.append(bool(flags[s]))
        rows.append(row)

    meta = {
        "data": name,
        f"X ({labels[0]})": _summary(sample.x, args.precision),
        f"Y ({labels[1]})": _summary(sample.y, args.precision),
        "U": suite.u.u,
        "C": suite.c.c,
        "method": args.method,
    }
    if args.method in ("perm", "both"):
        meta["permutations"] = "exact" if args.exact else args.perms
        if not args.exact:
            meta["seed"] = args.seed
    return Report(f"Lepage-type location-scale tests: {name}", columns, rows, meta, {"p_asymptotic", "p_permutation"})


def cmd_critvals(args) -> Report:
    stats = args.stats or LEPAGE_STATISTICS
    mode = "exact" if args.exact else "monte_carlo"
    nulls = permutation_nulls(
        rank_sample(args.m, args.n), stats, mode=mode, replications=args.perms, seed=args.seed, workers=args.workers
    )
    published = PUBLISHED_CRITICAL_VALUES.get((args.m, args.n)) if args.alpha == 0.05 else None
    columns = ["statistic", "critical_value", "quantile"] + (["published"] if published else [])
    rows = []
    for s in stats:
        row = [s, critical_value(nulls[s], args.alpha), quantile(nulls[s], 1 - args.alpha)]
        if published:
            row.append(published[LEPAGE_STATISTICS.index(s)] if s in LEPAGE_STATISTICS else None)
        rows.append(row)
    meta = {"m": args.m, "n": args.n, "alpha": args.alpha, "mode": mode}
    if mode == "monte_carlo":
        meta.update(permutations=args.perms, seed=args.seed)
    return Report("Permutation critical values (right tail)", columns, rows, meta)


def cmd_simulate(args) -> Report:
    config = load_sim_config(args.config)
    result = run_study(config, workers=args.workers)
    log.info("simulation finished in %.2f s", result.elapsed)
    meta = {
        "F": str(config.f_spec),
        "G": str(config.g_spec),
        "m": config.m,
        "n": config.n,
        "replications": config.replications,
        "alpha": config.alpha,
        "cutoffs": result.cutoff_source,
        "seed": config.seed,
    }
    rows = [
        [s, result.cutoffs[s], result.rates[s], result.standard_errors[s]] for s in config.stats
    ]
    return Report("Empirical rejection rates", ["statistic", "cutoff", "rejection_rate", "mc_se"], rows, meta)


def cmd_validate_varc(args) -> Report:
    if args.exact:
        mean, var0 = enumerate_var_c(args.m, args.n)
        rows = [[args.m, args.n, "enumeration", var0, mean, 0.0, mean / var0 - 1]]
    else:
        chk = validate_var_c(args.m, args.n, args.family, args.reps, args.seed, args.workers)
        rows = [[chk.m, chk.n, chk.family, chk.var0, chk.mean_var_hat, chk.standard_error, chk.relative_error]]
    meta = {} if args.exact else {"replications": args.reps, "seed": args.seed}
    return Report(
        "Empirical C-variance estimate vs. null variance",
        ["m", "n", "family", "var0_c", "mean_var_hat", "mc_se", "relative_error"],
        rows,
        meta,
    )


def cmd_quantiles(args) -> Report:
    rows = null_quantile_check(args.stat, args.m, args.n, args.family, args.reps, args.seed, workers=args.workers)
    return Report(
        f"Null quantiles of {args.stat}",
        ["level", "empirical", "ci_lower", "ci_upper", "asymptotic"],
        [[r.level, r.empirical, r.lower, r.upper, r.reference] for r in rows],
        {"m": args.m, "n": args.n, "family": args.family, "replications": args.reps, "seed": args.seed},
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lepage", description="Robust Lepage-type location-scale tests.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=True, workers=True):
        p.add_argument("--format", choices=FORMATS, default="text")
        p.add_argument("--precision", type=int, default=4)
        if seed:
            p.add_argument("--seed", type=int, default=None, help=f"default: ${SEED_ENV} or {DEFAULT_SEED}")
        if workers:
            p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("test", help="test one data set")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--dataset", choices=sorted(BUILTIN))
    src.add_argument("--input", help="two-column 'group,value' file")
    p.add_argument("--x-label", help="group to treat as X (default: first group)")
    p.add_argument("--method", choices=("perm", "asymptotic", "both"), default="both")
    p.add_argument("--perms", type=int, default=100_000)
    p.add_argument("--exact", action="store_true", help="enumerate all label assignments")
    p.add_argument("--stats", type=_stat_list, default=None, help="comma-separated, e.g. L0,L3")
    common(p)
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("critvals", help="permutation critical values for sizes m, n")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--perms", type=int, default=100_000)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--stats", type=_stat_list, default=None)
    common(p)
    p.set_defaults(func=cmd_critvals)

    p = sub.add_parser("simulate", help="size/power study from a config file")
    p.add_argument("--config", required=True)
    common(p, seed=False)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("validate-varc", help="check the empirical C-variance estimate")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--family", choices=sorted(FAMILIES), default="logistic")
    p.add_argument("--reps", type=int, default=10_000)
    p.add_argument("--exact", action="store_true", help="average over all label assignments instead")
    common(p)
    p.set_defaults(func=cmd_validate_varc)

    p = sub.add_parser("quantiles", help="null quantiles of a statistic vs. its asymptotic law")
    p.add_argument("--stat", choices=ALL_STATISTICS, default="C*_P")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--family", choices=sorted(FAMILIES), default="normal")
    p.add_argument("--reps", type=int, default=10_000)
    common(p)
    p.set_defaults(func=cmd_quantiles)
    return parser


def run(argv=None) -> tuple[int, str]:
    """Execute a command; return ``(exit_status, rendered_report)``."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if getattr(args, "seed", 0) is None:
        args.seed = _default_seed()
    try:
        report = args.func(args)
    except (ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 1, ""
    return 0, render(report, args.format, args.precision)


def main(argv=None) -> int:
    status, out = run(argv)
    sys.stdout.write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
