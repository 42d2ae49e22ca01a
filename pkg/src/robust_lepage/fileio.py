"""Data files, simulation config files and report rendering."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .distributions import DistributionSpec
from .rank_core import InvalidSampleError, TwoSample
from .simulation import SimConfig

FORMATS = ("text", "csv", "json")


class ParseError(ValueError):
    pass


class ConfigError(ValueError):
    pass


# ---------------------------------------------------------------------------
# two-column data files
# ---------------------------------------------------------------------------


def load_two_column(path, x_label: str | None = None) -> tuple[TwoSample, tuple[str, str]]:
    """Read a ``group,value`` file.

    The header row is optional.  The first group seen becomes X unless
    ``x_label`` names the other one.  Returns the sample and the
    ``(x_label, y_label)`` pair.
    """
    groups: dict[str, list[float]] = {}
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or all(not c.strip() for c in row) or row[0].lstrip().startswith("#"):
                continue
            if len(row) != 2:
                raise ParseError(f"{path}:{lineno}: expected 2 columns 'group,value', got {len(row)}")
            label, raw = row[0].strip(), row[1].strip()
            if lineno == 1 and (label.lower(), raw.lower()) == ("group", "value"):
                continue
            try:
                value = float(raw)
            except ValueError:
                raise ParseError(f"{path}:{lineno}: value {raw!r} is not a number") from None
            if not math.isfinite(value):
                raise ParseError(f"{path}:{lineno}: value {raw!r} is not finite")
            groups.setdefault(label, []).append(value)
            if len(groups) > 2:
                raise ParseError(f"{path}:{lineno}: more than two groups ({', '.join(groups)})")
    if len(groups) != 2:
        raise ParseError(f"{path}: need exactly two groups, found {len(groups)}")
    labels = list(groups)
    if x_label is not None:
        if x_label not in groups:
            raise ParseError(f"{path}: x label {x_label!r} not among groups {labels}")
        labels = [x_label] + [g for g in labels if g != x_label]
    try:
        sample = TwoSample(groups[labels[0]], groups[labels[1]])
    except InvalidSampleError as exc:
        raise ParseError(f"{path}: {exc}") from None
    return sample, (labels[0], labels[1])


def write_two_column(sample: TwoSample, path, labels: tuple[str, str] = ("X", "Y")) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["group", "value"])
        for label, values in zip(labels, (sample.x, sample.y)):
            for v in values:
                w.writerow([label, repr(float(v))])


# ---------------------------------------------------------------------------
# simulation config
# ---------------------------------------------------------------------------

_CONFIG_KEYS = {
    "f_family", "f_params", "g_family", "g_params", "m", "n",
    "reps", "alpha", "cutoffs", "perms", "seed", "stats",
}
_REQUIRED = ("f_family", "g_family", "m", "n")


def _parse_scalar(text: str):
    text = text.strip()
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    return text.strip("\"'")


def _read_flat(path) -> dict:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON ({exc})") from None
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: top level must be an object")
        return data
    data = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        data[key] = [_parse_scalar(v) for v in value.split(",")] if "," in value else _parse_scalar(value)
    return data


def _number_list(key, value):
    values = value if isinstance(value, list) else [value]
    if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in values):
        raise ConfigError(f"config key {key!r}: expected a number or a flat list of numbers")
    return tuple(float(v) for v in values)


def _integer(key, value):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"config key {key!r}: expected an integer, got {value!r}")
    return value


def load_sim_config(path) -> SimConfig:
    """Parse a flat simulation config (``key = value`` lines or a flat JSON object)."""
    data = _read_flat(path)
    for key, value in data.items():
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"unknown config key {key!r}; allowed: {', '.join(sorted(_CONFIG_KEYS))}")
        if isinstance(value, dict) or (isinstance(value, list) and any(isinstance(v, (list, dict)) for v in value)):
            raise ConfigError(f"config key {key!r}: nested values are not allowed")
    for key in _REQUIRED:
        if key not in data:
            raise ConfigError(f"missing required config key {key!r}")
    kwargs = {}
    try:
        for side in ("f", "g"):
            fam = data[f"{side}_family"]
            params = _number_list(f"{side}_params", data[f"{side}_params"]) if f"{side}_params" in data else ()
            try:
                kwargs[f"{side}_spec"] = DistributionSpec.of(str(fam), *params)
            except ValueError as exc:
                raise ConfigError(f"config key {side + '_family'!r}/{side + '_params'!r}: {exc}") from None
        kwargs["m"] = _integer("m", data["m"])
        kwargs["n"] = _integer("n", data["n"])
        if "reps" in data:
            kwargs["replications"] = _integer("reps", data["reps"])
        if "perms" in data:
            kwargs["perms"] = _integer("perms", data["perms"])
        if "seed" in data:
            kwargs["seed"] = _integer("seed", data["seed"])
        if "alpha" in data:
            kwargs["alpha"] = _number_list("alpha", data["alpha"])[0]
        if "cutoffs" in data:
            kwargs["cutoffs"] = str(data["cutoffs"])
        if "stats" in data:
            stats = data["stats"]
            kwargs["stats"] = tuple(str(s) for s in (stats if isinstance(stats, list) else [stats]))
        return SimConfig(**kwargs)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"invalid config: {exc}") from None


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


@dataclass
class Report:
    """A titled table plus key/value metadata, renderable in several formats.

    Columns listed in ``p_columns`` hold probabilities and are shown as
    ``<1e-4`` (at the default precision) when below display resolution.
    """

    title: str
    columns: list[str]
    rows: list[list] = field(default_factory=list)
    meta: dict = field(default_factory=dict)
    p_columns: set[str] = field(default_factory=set)


def format_cell(value, precision: int = 4, p_value: bool = False) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return "nan"
        if p_value and 0 <= value < 0.5 * 10.0**-precision:
            return f"<1e-{precision}"
        return f"{value:.{precision}f}"
    return str(value)


def _json_value(value):
    if isinstance(value, float) and not math.isfinite(value):
        return "inf" if value > 0 else ("-inf" if value < 0 else "nan")
    return value


def render(report: Report, fmt: str = "text", precision: int = 4) -> str:
    if fmt not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")
    if fmt == "json":
        doc = {
            "title": report.title,
            "meta": {k: _json_value(v) for k, v in report.meta.items()},
            "rows": [{c: _json_value(v) for c, v in zip(report.columns, row)} for row in report.rows],
        }
        return json.dumps(doc, indent=2) + "\n"
    cells = [
        [format_cell(v, precision, c in report.p_columns) for c, v in zip(report.columns, row)]
        for row in report.rows
    ]
    meta = [(k, format_cell(v, precision)) for k, v in report.meta.items()]
    if fmt == "csv":
        buf = io.StringIO()
        for k, v in meta:
            buf.write(f"# {k}: {v}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(report.columns)
        w.writerows(cells)
        return buf.getvalue()
    widths = [max(len(c), *(len(r[i]) for r in cells)) if cells else len(c) for i, c in enumerate(report.columns)]
    lines = [report.title, "=" * len(report.title)]
    lines += [f"{k}: {v}" for k, v in meta]
    lines.append("")
    lines.append("  ".join(c.rjust(w) for c, w in zip(report.columns, widths)))
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(v.rjust(w) for v, w in zip(r, widths)) for r in cells]
    return "\n".join(lines) + "\n"
