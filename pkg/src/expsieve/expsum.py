"""Exponential sums over the orbit of lambda modulo p.

``sigma_p(a) = sum_n gamma_n e_p(a lambda^{s_n})`` only depends on where each
``lambda^{s_n}`` lands, so the sum is first collapsed into a
:class:`ResidueProfile` (one complex weight per occupied residue). The
maximum of ``|sigma_p(a)|`` over ``1 <= a < p`` is then found by a direct
scan, by a length-``p`` DFT (Bluestein), or by sampling.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import OrderUndefinedError, factorize, mult_order, primitive_root
from .seqgen import splitmix64

__all__ = [
    "ResidueProfile",
    "Strategy",
    "SumScanResult",
    "bluestein_dft",
    "gauss_sum_max",
    "hbk_bound",
    "large_sieve_lhs",
    "large_sieve_rhs",
    "max_abs_sigma",
    "pair_bound",
    "residue_profile",
    "scan_prime",
    "sigma_at",
    "sigma_all",
]

DIRECT_WORK_BUDGET = 1 << 26
FFT_PRIME_CEILING = 1 << 22
DEFAULT_SAMPLES = 1024
# Moduli above this would overflow the int64 products a*r.
MAX_MODULUS = (1 << 31) - 1
# Scan chunk size in matrix entries.
_CHUNK = 1 << 21


@dataclass(frozen=True)
class Strategy:
    """How to maximise over ``a``: ``auto``, ``direct``, ``fft`` or ``sampled``."""

    kind: str = "auto"
    samples: int = DEFAULT_SAMPLES
    seed: int = 0
    direct_budget: int = DIRECT_WORK_BUDGET
    fft_ceiling: int = FFT_PRIME_CEILING

    def __post_init__(self):
        if self.kind not in ("auto", "direct", "fft", "sampled"):
            raise ValueError(f"unknown strategy {self.kind!r}")
        if self.samples < 1:
            raise ValueError("sampled strategy needs at least one sample")

    @classmethod
    def parse(cls, text: str, seed: int = 0) -> "Strategy":
        if text.startswith("sampled"):
            _, _, k = text.partition(":")
            return cls("sampled", samples=int(k) if k else DEFAULT_SAMPLES, seed=seed)
        return cls(text, seed=seed)

    def resolve(self, p: int, nnz: int) -> "Strategy":
        if self.kind != "auto":
            return self
        if p * nnz <= self.direct_budget:
            return Strategy("direct", self.samples, self.seed)
        if p <= self.fft_ceiling:
            return Strategy("fft", self.samples, self.seed)
        return Strategy("sampled", self.samples, self.seed)

    @property
    def label(self) -> str:
        return f"sampled({self.samples})" if self.kind == "sampled" else self.kind


@dataclass
class ResidueProfile:
    """Weights ``c_r = sum of gamma_n over n with lambda^{s_n} = r (mod p)``."""

    p: int
    t_p: int
    residues: np.ndarray
    weights: np.ndarray
    term_count: int
    weight_l1: float
    weight_l2sq: float

    @property
    def nnz(self) -> int:
        return len(self.residues)

    def as_dict(self) -> dict[int, complex]:
        return {int(r): complex(w) for r, w in zip(self.residues, self.weights)}

    def dense(self) -> np.ndarray:
        """Length-``p`` weight vector indexed by residue."""
        out = np.zeros(self.p, dtype=np.complex128)
        out[self.residues] = self.weights
        return out

    @classmethod
    def from_weights(cls, p: int, weights: dict[int, complex], t_p: int = 0) -> "ResidueProfile":
        """Profile with arbitrary weights; used for transform checks."""
        items = sorted((int(r) % p, complex(w)) for r, w in weights.items())
        res = np.array([r for r, _ in items], dtype=np.int64)
        w = np.array([c for _, c in items], dtype=np.complex128)
        absw = np.abs(w)
        return cls(p, t_p, res, w, len(items), float(absw.sum()), float((absw**2).sum()))


@dataclass
class SumScanResult:
    p: int
    t_p: int
    max_abs: float
    argmax_a: int
    exact: bool
    strategy: str
    hbk: float
    trivial_bound: float


def _power_table(lam: int, p: int, t: int) -> np.ndarray:
    # lam^k mod p for 0 <= k < t, by repeated doubling of the filled block.
    table = np.empty(t, dtype=np.int64)
    table[0] = 1
    filled = 1
    lam_mod = lam % p
    while filled < t:
        step = pow(lam_mod, filled, p)
        n = min(filled, t - filled)
        table[filled : filled + n] = table[:n] * step % p
        filled += n
    return table


def residue_profile(lam: int, p: int, s, gamma, t_p: int | None = None) -> ResidueProfile:
    """Collapse ``(s_n, gamma_n)`` onto residues of ``lambda^{s_n}`` modulo ``p``."""
    if lam % p == 0:
        raise OrderUndefinedError(f"{p} divides {lam}; order undefined")
    if p > MAX_MODULUS:
        raise ValueError(f"modulus {p} too large for the vectorised engine")
    s = np.asarray(s, dtype=np.int64)
    gamma = np.asarray(gamma, dtype=np.complex128)
    if s.shape != gamma.shape:
        raise ValueError(f"|s| = {len(s)} but |gamma| = {len(gamma)}")
    if t_p is None:
        t_p = mult_order(lam, p)
    k = s % t_p
    counts = np.bincount(k, minlength=t_p)
    wk = np.bincount(k, weights=gamma.real, minlength=t_p) + 1j * np.bincount(
        k, weights=gamma.imag, minlength=t_p
    )
    occupied = np.flatnonzero(counts)
    # lambda^k is injective on 0 <= k < t_p, so residues stay distinct.
    res = _power_table(lam, p, t_p)[occupied]
    order = np.argsort(res, kind="stable")
    absg = np.abs(gamma)
    return ResidueProfile(
        p=p,
        t_p=t_p,
        residues=res[order],
        weights=wk[occupied][order],
        term_count=len(s),
        weight_l1=float(absg.sum()),
        weight_l2sq=float((absg**2).sum()),
    )


def _unit_table(p: int) -> np.ndarray:
    k = np.arange(p, dtype=np.float64)
    return np.exp(2j * np.pi * k / p)


def sigma_at(profile: ResidueProfile, a: int) -> complex:
    p = profile.p
    # a*r reduced in integers before the trigonometric call.
    k = (int(a) % p) * profile.residues % p
    return complex(np.sum(profile.weights * np.exp(2j * np.pi * (k / p))))


def _direct_values(profile: ResidueProfile, a_values: np.ndarray) -> np.ndarray:
    p = profile.p
    r = profile.residues
    w = profile.weights
    table = _unit_table(p)
    out = np.empty(len(a_values), dtype=np.complex128)
    rows = max(1, _CHUNK // max(1, len(r)))
    for lo in range(0, len(a_values), rows):
        a = a_values[lo : lo + rows]
        idx = np.outer(a, r) % p
        out[lo : lo + rows] = table[idx] @ w
    return out


def bluestein_dft(x, sign: int = -1) -> np.ndarray:
    """``X_k = sum_n x_n exp(sign * 2 pi i n k / N)`` for any length ``N``.

    Chirp-z reduction: ``nk = (n^2 + k^2 - (k - n)^2) / 2`` turns the DFT into a
    convolution, done with power-of-two FFTs. Chirp phases use ``m^2 mod 2N``
    in integers.
    """
    x = np.asarray(x, dtype=np.complex128)
    n = len(x)
    if n == 0:
        return x.copy()
    m = np.arange(n, dtype=np.int64)
    chirp = np.exp(sign * 1j * np.pi * ((m * m) % (2 * n)) / n)
    size = 1 << (2 * n - 2).bit_length()
    a = np.zeros(size, dtype=np.complex128)
    a[:n] = x * chirp
    b = np.zeros(size, dtype=np.complex128)
    b[:n] = np.conj(chirp)
    if n > 1:
        b[-(n - 1) :] = np.conj(chirp[1:][::-1])
    conv = np.fft.ifft(np.fft.fft(a) * np.fft.fft(b))
    return chirp * conv[:n]


def sigma_all(profile: ResidueProfile, strategy: str = "fft") -> np.ndarray:
    """``sigma_p(a)`` for every ``0 <= a < p``."""
    p = profile.p
    if strategy == "fft":
        return bluestein_dft(profile.dense(), sign=+1)
    return _direct_values(profile, np.arange(p, dtype=np.int64))


def _tie_tolerance(profile: ResidueProfile) -> float:
    # Values this close to the maximum count as ties; smallest a wins.
    return 1e-10 * max(1.0, profile.weight_l1)


def _pick(values: np.ndarray, a_values: np.ndarray, tol: float) -> tuple[float, int]:
    mods = np.abs(values)
    best = float(mods.max())
    cand = a_values[mods >= best - tol]
    return best, int(cand.min())


def _sample_points(p: int, k: int, seed: int) -> np.ndarray:
    j = np.arange(1, k + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = splitmix64(j + np.uint64(seed & ((1 << 64) - 1)))
    return (1 + z % np.uint64(p - 1)).astype(np.int64)


def max_abs_sigma(profile: ResidueProfile, strategy: Strategy | str = "auto") -> SumScanResult:
    """Maximum of ``|sigma_p(a)|`` over ``1 <= a < p``."""
    if isinstance(strategy, str):
        strategy = Strategy.parse(strategy)
    p = profile.p
    strat = strategy.resolve(p, profile.nnz)
    hbk = hbk_bound(p, profile.t_p) if profile.t_p >= 1 else float("nan")
    common = dict(p=p, t_p=profile.t_p, strategy=strat.label, hbk=hbk, trivial_bound=profile.weight_l1)
    if profile.nnz == 0 or p < 2:
        return SumScanResult(max_abs=0.0, argmax_a=1, exact=strat.kind != "sampled", **common)
    tol = _tie_tolerance(profile)
    if strat.kind == "sampled":
        a = _sample_points(p, strat.samples, strat.seed)
        best, arg = _pick(_direct_values(profile, a), a, tol)
        return SumScanResult(max_abs=best, argmax_a=arg, exact=False, **common)
    a = np.arange(1, p, dtype=np.int64)
    if strat.kind == "fft":
        values = sigma_all(profile, "fft")[1:]
    else:
        values = _direct_values(profile, a)
    best, arg = _pick(values, a, tol)
    return SumScanResult(max_abs=best, argmax_a=arg, exact=True, **common)


def scan_prime(lam: int, p: int, s, gamma, strategy: Strategy | str = "auto", t_p: int | None = None) -> SumScanResult:
    return max_abs_sigma(residue_profile(lam, p, s, gamma, t_p=t_p), strategy)


def gauss_sum_max(theta: int, p: int) -> tuple[int, float]:
    """``(t, max_a |sum_{z=1}^t e_p(a theta^z)|)`` with ``t`` the order of ``theta``.

    The sum is constant on cosets of the subgroup ``<theta>``, so only one
    ``a`` per coset is evaluated; the result is still exact.
    """
    if theta % p == 0:
        raise OrderUndefinedError(f"{p} divides {theta}; order undefined")
    pm1 = factorize(p - 1)
    t = mult_order(theta, p, pm1)
    subgroup = _power_table(theta, p, t)
    g = primitive_root(p, pm1)
    reps = _power_table(g, p, (p - 1) // t)
    profile = ResidueProfile.from_weights(p, {int(z): 1.0 for z in subgroup}, t_p=t)
    values = _direct_values(profile, reps)
    return t, float(np.abs(values).max())


def hbk_bound(p: int, t: int) -> float:
    """``min(p^(1/2), p^(1/4) t^(3/8), p^(1/8) t^(5/8))``."""
    return min(p**0.5, p**0.25 * t**0.375, p**0.125 * t**0.625)


def pair_bound(p: int, t: int, pair) -> float:
    """``p^alpha t^beta`` for an exponent pair (anything with ``alpha``/``beta`` or a 2-tuple)."""
    alpha, beta = (pair.alpha, pair.beta) if hasattr(pair, "alpha") else pair
    if not (0 <= alpha <= 1 and 0 <= beta <= 1):
        raise ValueError(f"exponent pair ({alpha}, {beta}) outside [0, 1]^2")
    return p ** float(alpha) * t ** float(beta)


def large_sieve_lhs(s, gamma, K: int) -> float:
    """``sum_{k<=K} sum_{(c,k)=1} |sum_n gamma_n e_k(c s_n)|^2``, evaluated directly."""
    s = np.asarray(s, dtype=np.int64)
    gamma = np.asarray(gamma, dtype=np.complex128)
    total = 0.0
    for k in range(1, int(K) + 1):
        c = np.array([c for c in range(1, k + 1) if math.gcd(c, k) == 1], dtype=np.int64)
        phase = np.outer(c, s % k) % k
        sums = np.exp(2j * np.pi * phase / k) @ gamma
        total += float(np.sum(sums.real**2 + sums.imag**2))
    return total


def large_sieve_rhs(K: float, s_T: float, T: float) -> float:
    return (K * K + s_T) * T
