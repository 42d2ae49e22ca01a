"""Brute-force reference implementations in exact rational arithmetic.

Deliberately naive: pair counting, explicit sorting and full enumeration.
Used only to cross-check the vectorized package code.
"""

from fractions import Fraction
from itertools import combinations


def u_pairs(x, y):
    """Share of pairs with x < y, ties counting one half."""
    total = Fraction(0)
    for a in x:
        for b in y:
            if a < b:
                total += 1
            elif a == b:
                total += Fraction(1, 2)
    return total / (len(x) * len(y))


def ansari_scores_sorted(z):
    """Ansari midscores of z, in the input order."""
    N = len(z)
    order = sorted(range(N), key=lambda i: z[i])
    base = [min(k, N + 1 - k) for k in range(1, N + 1)]
    out = [None] * N
    k = 0
    while k < N:
        j = k
        while j + 1 < N and z[order[j + 1]] == z[order[k]]:
            j += 1
        avg = Fraction(sum(base[k:j + 1]), j - k + 1)
        for t in range(k, j + 1):
            out[order[t]] = avg
        k = j + 1
    return out


def c_sum(x, y):
    s = ansari_scores_sorted(list(x) + list(y))
    return sum(s[len(x):])


def _var(v, ddof):
    mu = Fraction(sum(v), len(v))
    return sum((a - mu) ** 2 for a in v) / (len(v) - ddof)


def placement_variances(x, y):
    """FP and FH estimates from ECDF placements (<=, n-1 divisor)."""
    m, n = len(x), len(y)
    fy = [Fraction(sum(1 for b in y if b <= a), n) for a in x]
    fx = [Fraction(sum(1 for a in x if a <= b), m) for b in y]
    vx, vy = _var(fy, 1), _var(fx, 1)
    pair = Fraction(sum(fy), m) * Fraction(sum(fx), n)
    fp = (1 - Fraction(1, m)) / m * vx + (1 - Fraction(1, n)) / n * vy + pair / (m * n)
    fh = (1 - Fraction(1, n)) / m * vx + (1 - Fraction(1, m)) / n * vy + pair / (m * n)
    return fp, fh


def var_hat(x, y):
    n, N = len(y), len(x) + len(y)
    s = ansari_scores_sorted(list(x) + list(y))[len(x):]
    return _var(s, 0) * n * n * (N - n) / (N * (n - 1))


def lepage_all(x, y):
    """All six quadratic statistics (as Fractions; None where a variance is 0)."""
    m, n = len(x), len(y)
    N = m + n
    u = u_pairs(x, y) - Fraction(1, 2)
    v0u = (Fraction(1, m) + Fraction(1, n) + Fraction(1, m * n)) / 12
    fp, fh = placement_variances(x, y)
    c = c_sum(x, y)
    if N % 2 == 0:
        e0 = Fraction(n * (N + 2), 4)
        v0c = Fraction(m * n * (N * N - 4), 48 * (N - 1))
    else:
        e0 = Fraction(n * (N + 1) ** 2, 4 * N)
        v0c = Fraction(m * n * (N + 1) * (N * N + 3), 48 * N * N)
    vh = var_hat(x, y)
    c2 = (c - e0) ** 2

    def q(vu, vc):
        if vu == 0 or vc == 0:
            return None
        return u * u / vu + c2 / vc

    return {"L0": q(v0u, v0c), "L1": q(fp, v0c), "L2": q(fh, v0c),
            "L3": q(v0u, vh), "L4": q(fp, vh), "L5": q(fh, vh)}


def permutation_moments(m, n):
    """Exact mean and variance of U and C over all label assignments (no ties)."""
    N = m + n
    z = list(range(1, N + 1))
    us, cs = [], []
    for ys in combinations(range(N), n):
        yset = set(ys)
        x = [z[i] for i in range(N) if i not in yset]
        y = [z[i] for i in ys]
        us.append(u_pairs(x, y))
        cs.append(c_sum(x, y))
    k = len(us)
    mu_u, mu_c = sum(us) / k, sum(cs) / k
    return {
        "e_u": mu_u,
        "var_u": sum((a - mu_u) ** 2 for a in us) / k,
        "e_c": mu_c,
        "var_c": sum((a - mu_c) ** 2 for a in cs) / k,
    }


def mean_var_hat(m, n):
    """Exact average of var_hat over all label assignments (no ties)."""
    N = m + n
    z = list(range(1, N + 1))
    tot, k = Fraction(0), 0
    for ys in combinations(range(N), n):
        yset = set(ys)
        tot += var_hat([z[i] for i in range(N) if i not in yset], [z[i] for i in ys])
        k += 1
    return tot / k
