import numpy as np


def flagged_ratio(num, den):
    """Elementwise ``num / den`` that never produces NaN.

    A zero denominator yields a signed infinity (or 0 when the numerator is
    also 0) and sets the returned flag.
    """
    num = np.asarray(num, dtype=float)
    den = np.asarray(den, dtype=float)
    degenerate = den <= 0
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(degenerate, np.sign(num) * np.inf, num / np.where(degenerate, 1.0, den))
    out = np.where(degenerate & (num == 0), 0.0, out)
    return out, degenerate


def scalar(a):
    """Unwrap 0-d arrays to Python scalars, pass everything else through."""
    a = np.asarray(a)
    return a.item() if a.ndim == 0 else a
