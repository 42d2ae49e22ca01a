"""Small two-group biomedical data sets bundled for examples and checks."""

from __future__ import annotations

from dataclasses import dataclass

from .rank_core import TwoSample


@dataclass(frozen=True)
class Dataset:
    name: str
    x_label: str
    y_label: str
    x: tuple[float, ...]
    y: tuple[float, ...]
    note: str

    @property
    def sample(self) -> TwoSample:
        return TwoSample(self.x, self.y)


BUILTIN = {
    "platelet": Dataset(
        "platelet",
        "treated",
        "control",
        (120, 124, 215, 90, 67, 126, 95, 190, 180, 135, 399, 65),
        (12, 20, 112, 32, 60, 40, 18),
        "Platelet counts (per cubic millimeter) of newborns; mothers treated with prednisone vs. untreated "
        "(Karpatkin et al. 1981, via Hollander, Wolfe & Chicken 2014).",
    ),
    "hormone": Dataset(
        "hormone",
        "type-A",
        "type-B",
        (3.6, 2.6, 4.7, 8.0, 3.1, 8.8, 4.6, 5.8, 4.0, 4.6),
        (16.2, 17.4, 8.5, 15.6, 5.4, 9.8, 14.9, 16.6, 15.9, 5.3, 10.5),
        "Peak plasma growth hormone after arginine hydrochloride infusion, Type-A vs. Type-B subjects "
        "(Hollander, Wolfe & Chicken 2014).",
    ),
    "thyroid": Dataset(
        "thyroid",
        "control",
        "treatment",
        (0.7, 1.2, 1.4, 2.3, 1.6, 0.9, 1.3),
        (4.1, 4.4, 3.3, 2.1, 3.5, 2.9, 2.8, 4.3),
        "Weights (grams) of juvenile mice, control vs. thyroxine treatment (Tasdan & Sievers 2009).",
    ),
    "sleep": Dataset(
        "sleep",
        "dose-1",
        "dose-2",
        (0.7, -1.6, -0.2, -1.2, -1, 3.4, 3.7, 0.8, 0, 2),
        (1.9, 0.8, 1.1, 0.1, -0.1, 4.4, 5.5, 1.6, 4.6, 3.4),
        "Extra hours of sleep under two soporific doses (Student 1908).",
    ),
}


def builtin_dataset(name: str) -> Dataset:
    try:
        return BUILTIN[name]
    except KeyError:
        raise KeyError(f"unknown dataset {name!r}; choose from {', '.join(BUILTIN)}") from None
