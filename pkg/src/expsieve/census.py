"""Prime censuses and the theorem-level comparisons built on them.

Every ``<<`` inequality is turned into a measured ratio ``lhs / rhs``; the
implied constants are never asserted, only reported. Logarithms are natural.
"""
from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from .arith import factorize, mult_order, prime_array, tau
from .expsum import Strategy, SumScanResult, scan_prime
from .pairs import ExponentPair

__all__ = [
    "CensusParams",
    "CorollaryReport",
    "ErdosMurtyReport",
    "PrimeRecord",
    "VerificationReport",
    "corollary_census",
    "corollary_threshold",
    "default_workers",
    "erdos_murty_check",
    "excluded_primes",
    "order_census",
    "parameter_suggest",
    "scan_primes",
    "split_E",
    "theorem1_lhs",
    "theorem1_rhs",
    "theorem1_rhs_optimized",
    "theorem2_lhs",
    "theorem2_rhs",
    "theorem3_lhs",
    "theorem3_rhs",
    "titchmarsh_ratio",
]


class CensusWarning(UserWarning):
    pass


@dataclass
class CensusParams:
    lam: int = 2
    X: float = 1000.0
    T: int | None = None
    Delta: float | None = None
    L: float = 2.0
    K: float | None = None
    epsilon: float = 1.0
    seed: int = 0
    strategy: Strategy = field(default_factory=Strategy)

    def __post_init__(self):
        if self.lam < 2:
            raise ValueError("lambda must be >= 2")
        if self.X < 3:
            raise ValueError("X must be >= 3")
        if self.T is None:
            self.T = int(self.X)
        if self.Delta is None:
            self.Delta = self.X**0.4
        if self.K is None:
            self.K = float(self.T)
        if self.T < 1 or self.Delta <= 0 or self.L <= 0 or self.K <= 0 or self.epsilon <= 0:
            raise ValueError("T, Delta, L, K and epsilon must be positive")
        if self.Delta <= self.X ** (1 / 3):
            warnings.warn(
                f"Delta = {self.Delta:.6g} does not exceed X^(1/3) = {self.X ** (1 / 3):.6g}",
                CensusWarning,
                stacklevel=2,
            )


@dataclass(frozen=True)
class PrimeRecord:
    p: int
    t_p: int
    tau_pm1: int
    in_E: bool = False
    in_Eprime: bool = False


@dataclass
class VerificationReport:
    lhs: float
    rhs: float
    parts: dict[str, float]
    exact: bool
    params: dict = field(default_factory=dict)

    @property
    def ratio(self) -> float:
        return self.lhs / self.rhs if self.rhs > 0 else float("nan")


def default_workers() -> int:
    env = os.environ.get("EXPSIEVE_WORKERS")
    if env:
        return max(1, int(env))
    try:
        return max(1, len(os.sched_getaffinity(0)))
    except AttributeError:
        return os.cpu_count() or 1


def excluded_primes(lam: int, X: float) -> list[int]:
    """Primes ``p <= X`` dividing ``lambda``; they have no order and sit outside every census."""
    return [p for p in prime_array(int(X)).tolist() if lam % p == 0]


def order_census(lam: int, X: float) -> list[PrimeRecord]:
    """One record per prime ``p <= X`` with ``p`` not dividing ``lambda``, ascending."""
    records = []
    for p in prime_array(int(X)).tolist():
        if lam % p == 0:
            continue
        pm1 = factorize(p - 1)
        records.append(PrimeRecord(p, mult_order(lam, p, pm1), tau(pm1)))
    return records


def split_E(records, Delta: float, X: float, epsilon: float):
    """Split into ``(E, E', Ebar)``: ``t_p > Delta``, and additionally ``tau(p-1) < (log X)^(1+eps/2)``."""
    tau_cut = math.log(X) ** (1 + epsilon / 2)
    E, Eprime, Ebar = [], [], []
    for rec in records:
        in_E = rec.t_p > Delta
        in_Ep = in_E and rec.tau_pm1 < tau_cut
        rec = replace(rec, in_E=in_E, in_Eprime=in_Ep)
        (E if in_E else Ebar).append(rec)
        if in_Ep:
            Eprime.append(rec)
    return E, Eprime, Ebar


# Worker state is installed once per process so large sequences are not
# re-sent with every task.
_WORKER: dict = {}


def _init_worker(lam, s, gamma, strategy):
    _WORKER.update(lam=lam, s=s, gamma=gamma, strategy=strategy)


def _scan_task(task) -> SumScanResult:
    p, t_p, cut = task
    w = _WORKER
    return scan_prime(w["lam"], p, w["s"][:cut], w["gamma"][:cut], w["strategy"], t_p=t_p)


def scan_primes(records, lam, s, gamma, strategy=None, workers: int = 1, truncations=None) -> list[SumScanResult]:
    """Per-prime maxima of ``|sigma_p(a)|``, in the order of ``records``.

    ``truncations`` maps ``p`` to the number of leading terms to use. Results
    do not depend on ``workers``: tasks are independent and merged in order.
    """
    if strategy is None:
        strategy = Strategy()
    elif isinstance(strategy, str):
        strategy = Strategy.parse(strategy)
    s = np.asarray(s, dtype=np.int64)
    gamma = np.asarray(gamma, dtype=np.complex128)
    T = len(s)
    tasks = [(r.p, r.t_p, T if truncations is None else int(truncations[r.p])) for r in records]
    if workers <= 1 or len(tasks) < 2:
        _init_worker(lam, s, gamma, strategy)
        try:
            return [_scan_task(t) for t in tasks]
        finally:
            _WORKER.clear()
    # Big primes first so the pool drains evenly; results are re-sorted after.
    order = sorted(range(len(tasks)), key=lambda i: -tasks[i][0])
    with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(lam, s, gamma, strategy)) as pool:
        out = list(pool.map(_scan_task, [tasks[i] for i in order], chunksize=1))
    results = [None] * len(tasks)
    for i, res in zip(order, out):
        results[i] = res
    return results


def _weighted_sum(records, scans) -> float:
    return math.fsum(sc.max_abs**2 / rec.tau_pm1 for rec, sc in zip(records, scans))


def theorem1_lhs(E, lam, s, gamma, strategy=None, workers: int = 1):
    """``sum_{p in E} max_a |sigma_p(a)|^2 / tau(p-1)`` -> ``(value, exact, scans)``."""
    scans = scan_primes(E, lam, s, gamma, strategy, workers)
    return _weighted_sum(E, scans), all(sc.exact for sc in scans), scans


def theorem1_rhs(X, T, Delta, L, s_T):
    """``(X + s_T X^(1/7) Delta^(-3/7) L + T L^(-7/4)) X T`` with the bracket terms as parts."""
    parts = {
        "term1": float(X),
        "term2": s_T * X ** (1 / 7) * Delta ** (-3 / 7) * L,
        "term3": T * L ** (-7 / 4),
    }
    return math.fsum(parts.values()) * X * T, parts


def theorem1_rhs_optimized(X, T, Delta, s_T) -> float:
    return (1 + (s_T**7 * T**4 * X**-10 * Delta**-3) ** (1 / 11)) * X * X * T


def theorem2_lhs(E1, Tp, lam, s, gamma, strategy=None, workers: int = 1):
    """Theorem-1 sum with prime-dependent truncation ``T_p`` -> ``(value, exact, scans)``."""
    T = len(s)
    for rec in E1:
        if rec.p not in Tp:
            raise ValueError(f"no truncation given for p = {rec.p}")
        if not 1 <= Tp[rec.p] <= T:
            raise ValueError(f"T_{rec.p} = {Tp[rec.p]} outside [1, {T}]")
    scans = scan_primes(E1, lam, s, gamma, strategy, workers, truncations=Tp)
    return _weighted_sum(E1, scans), all(sc.exact for sc in scans), scans


def theorem2_rhs(X, T, Delta, L, s_T, K, E1_records):
    if K <= 1:
        raise ValueError("K must exceed 1")
    base, _ = theorem1_rhs(X, T, Delta, L, s_T)
    parts = {
        "term1": base * math.log(K) ** 2,
        "term2": T * T / (K * K) * math.fsum(1 / r.tau_pm1 for r in E1_records),
    }
    return parts["term1"] + parts["term2"], parts


def theorem3_lhs(E, lam, N, delta, strategy=None, workers: int = 1):
    """Theorem-1 sum with ``s_n = n`` and unrestricted coefficients ``delta_n``."""
    delta = np.asarray(delta, dtype=np.complex128)
    if len(delta) != N:
        raise ValueError(f"need {N} coefficients, got {len(delta)}")
    s = np.arange(1, N + 1, dtype=np.int64)
    scans = scan_primes(E, lam, s, delta, strategy, workers)
    return _weighted_sum(E, scans), all(sc.exact for sc in scans), scans


def theorem3_rhs(X, N, Delta, L, pair, delta):
    alpha, beta = (float(v) for v in pair)
    if not (0 <= alpha <= 1 and 0 <= beta <= 1):
        raise ValueError("pair outside [0, 1]^2")
    absd = np.abs(np.asarray(delta, dtype=np.complex128))
    l2sq = float(np.sum(absd**2))
    l1 = float(np.sum(absd))
    denom = 3 - 2 * beta
    inner = X + N * X ** (2 * alpha / denom) * Delta ** (-(2 - 2 * beta) / denom) * L
    parts = {
        "term1": X * inner * l2sq,
        "term2": X * L ** (-3 + 2 * beta) * l1 * l1,
    }
    return parts["term1"] + parts["term2"], parts


def corollary_threshold(T: int, epsilon: float, c_corr: float = 1.0) -> float:
    if T < 3:
        raise ValueError("T must be >= 3")
    return c_corr * T * math.log(T) ** (-epsilon / 5)


@dataclass
class CorollaryReport:
    threshold: float
    violating: list[int]
    n_eprime: int
    exact: bool
    scans: list[SumScanResult] = field(default_factory=list, repr=False)

    @property
    def empty(self) -> bool:
        return self.n_eprime == 0

    @property
    def fraction(self) -> float:
        return len(self.violating) / self.n_eprime if self.n_eprime else 0.0


def corollary_census(Eprime, lam, s, T, epsilon, strategy=None, c_corr: float = 1.0, workers: int = 1) -> CorollaryReport:
    """Primes of ``E'`` whose maximum with ``gamma = 1`` exceeds ``c_corr T (log T)^(-eps/5)``."""
    threshold = corollary_threshold(T, epsilon, c_corr)
    s = np.asarray(s, dtype=np.int64)[:T]
    scans = scan_primes(Eprime, lam, s, np.ones(len(s), dtype=np.complex128), strategy, workers)
    violating = [sc.p for sc in scans if sc.max_abs > threshold]
    return CorollaryReport(threshold, violating, len(Eprime), all(sc.exact for sc in scans), scans)


def parameter_suggest(X: float, epsilon: float, nu_T: float = 0.0) -> tuple[int, float, float]:
    """``T = [X (log X)^(2+eps)]``, ``L = T^|nu_T| (log T)^10``, ``Delta = T^(1/2) L^7``."""
    if X < 3:
        raise ValueError("X must be >= 3")
    T = math.floor(X * math.log(X) ** (2 + epsilon))
    L = T ** abs(nu_T) * math.log(T) ** 10
    return T, L, math.sqrt(T) * L**7


@dataclass
class ErdosMurtyReport:
    count: int
    bound: float
    divisibility_ok: bool

    @property
    def ratio(self) -> float:
        return self.count / self.bound if self.bound > 0 else float("nan")


def erdos_murty_check(Ebar_records, Delta: float, lam: int) -> ErdosMurtyReport:
    """Count ``Ebar`` against ``Delta^2 / log Delta``; check each ``p | lambda^k - 1`` for some ``k <= Delta``."""
    if Delta <= 1:
        raise ValueError("Delta must exceed 1")
    ok = all(r.t_p <= Delta and pow(lam, r.t_p, r.p) == 1 for r in Ebar_records)
    return ErdosMurtyReport(len(Ebar_records), Delta * Delta / math.log(Delta), ok)


def titchmarsh_ratio(X: float) -> float:
    """``sum_{p <= X} tau(p - 1) / X``."""
    if X < 3:
        raise ValueError("X must be >= 3")
    return sum(tau(p - 1) for p in prime_array(int(X)).tolist()) / X


def pair_exponents(pair: ExponentPair | tuple) -> tuple[Fraction, Fraction]:
    """Exponents of ``X`` and ``Delta`` in the pair-generalised middle term."""
    alpha, beta = (Fraction(v) for v in pair)
    return 2 * alpha / (3 - 2 * beta), (2 - 2 * beta) / (3 - 2 * beta)
