"""Discrepancy of point sets in [0, 1) and the Erdos-Turan upper bound."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import OrderUndefinedError, mult_order
from .expsum import _power_table

__all__ = [
    "PointSet",
    "decay_exponent",
    "erdos_turan_bound",
    "extreme_discrepancy",
    "fractional_parts",
    "star_discrepancy",
]

ERDOS_TURAN_CONSTANT = 3.0


@dataclass
class PointSet:
    points: np.ndarray

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=np.float64)
        if self.points.ndim != 1:
            raise ValueError("points must be one-dimensional")
        if len(self.points) and (self.points.min() < 0 or self.points.max() >= 1):
            raise ValueError("points must lie in [0, 1)")

    @property
    def N(self) -> int:
        return len(self.points)

    def _require_points(self):
        if self.N == 0:
            raise ValueError("discrepancy of an empty point set is undefined")


def fractional_parts(lam: int, p: int, s) -> PointSet:
    """Points ``(lambda^{s_n} mod p) / p`` in input order."""
    if lam % p == 0:
        raise OrderUndefinedError(f"{p} divides {lam}; order undefined")
    s = np.asarray(s, dtype=np.int64)
    t = mult_order(lam, p)
    residues = _power_table(lam, p, t)[s % t]
    return PointSet(residues / p)


def star_discrepancy(ps: PointSet) -> float:
    ps._require_points()
    x = np.sort(ps.points)
    n = len(x)
    i = np.arange(1, n + 1)
    return float(max((i / n - x).max(), (x - (i - 1) / n).max()))


def extreme_discrepancy(ps: PointSet) -> float:
    """Exact ``sup |A([a, b))/N - (b - a)|`` over half-open intervals.

    Candidate endpoints are 0, 1 and each distinct point ``u`` taken either as
    ``u`` itself or as the limit ``u+0``. Counts for both kinds come from the
    sorted multiplicities, so limits are handled by strict versus non-strict
    comparison rather than by perturbing endpoints. The best pair is found with
    running extrema over the sorted candidates.
    """
    ps._require_points()
    n = ps.N
    u, mult = np.unique(ps.points, return_counts=True)
    le = np.cumsum(mult) / n  # fraction of points <= u_k
    lt = le - mult / n  # fraction of points < u_k

    # Overshoot: a = u_i (inclusive), b -> u_j + 0, i <= j.
    # value = le_j - lt_i - (u_j - u_i)
    head = np.maximum.accumulate(u - lt)
    over = float(np.max(le - u + head))

    # Undershoot: a in {0} U {u_i + 0}, b in {u_j} U {1}, a < b.
    # value = (b - a) - (count below b - count at or below a)
    a_pos = np.concatenate(([0.0], u))
    a_cnt = np.concatenate(([0.0], le))
    b_pos = np.concatenate((u, [1.0]))
    b_cnt = np.concatenate((lt, [1.0]))
    # a-candidate k (k = 0 is 0, k >= 1 is u_{k-1} + 0) precedes b-candidate j
    # (j < len(u) is u_j, last is 1) exactly when k <= j.
    best_a = np.maximum.accumulate(a_cnt - a_pos)
    under = float(np.max(b_pos - b_cnt + best_a[: len(b_pos)]))
    return max(over, under, 0.0)


def erdos_turan_bound(ps: PointSet, H: int | None = None) -> float:
    """``1/(H+1) + 3 sum_{h<=H} |(1/N) sum_j e(h x_j)| / h``; ``H`` defaults to ``isqrt(N)``."""
    ps._require_points()
    if H is None:
        H = max(1, math.isqrt(ps.N))
    if H < 1:
        raise ValueError("H must be >= 1")
    h = np.arange(1, H + 1, dtype=np.float64)
    sums = np.empty(H)
    rows = max(1, (1 << 22) // ps.N)
    for lo in range(0, H, rows):
        phase = np.outer(h[lo : lo + rows], ps.points) % 1.0
        sums[lo : lo + rows] = np.abs(np.exp(2j * np.pi * phase).mean(axis=1))
    return float(1.0 / (H + 1) + ERDOS_TURAN_CONSTANT * np.sum(sums / h))


def decay_exponent(X_values, D_values) -> tuple[float, float]:
    """Least-squares fit of ``D ~ C (log X)^(-eps1)``; returns ``(eps1, C)``.

    A measurement, not a claim: the decay rate is unspecified in the theory
    and desk-scale ranges of ``log X`` are short.
    """
    x = np.log(np.log(np.asarray(X_values, dtype=np.float64)))
    y = np.log(np.asarray(D_values, dtype=np.float64))
    if len(x) < 2 or np.ptp(x) == 0:
        raise ValueError("need at least two distinct X values")
    if not np.all(np.isfinite(y)):
        raise ValueError("discrepancies must be positive")
    slope, intercept = np.polyfit(x, y, 1)
    return float(-slope), float(math.exp(intercept))
