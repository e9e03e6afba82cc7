"""Exponent sequences ``s_n`` and unimodular coefficient sequences ``gamma_n``."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .arith import prime_array

__all__ = [
    "CoefficientSpec",
    "SequenceSpec",
    "SequenceError",
    "gen_gamma",
    "gen_s",
    "nth_primes",
    "parse_coefficient_spec",
    "parse_sequence_spec",
    "sparsity_report",
    "splitmix64",
    "unit_random",
    "validate_increasing",
    "empirical_exponent",
]

MAX_PRIME_POWER_EXPONENT = Fraction(15, 14)
_MASK64 = (1 << 64) - 1


class SequenceError(ValueError):
    """Invalid sequence or coefficient input."""


@dataclass(frozen=True)
class SequenceSpec:
    kind: str = "identity"
    c: Fraction = Fraction(1)
    path: str | None = None
    slack: float = 0.0

    def __post_init__(self):
        if self.kind not in ("identity", "prime_power", "file"):
            raise SequenceError(f"unknown sequence kind {self.kind!r}")
        object.__setattr__(self, "c", Fraction(self.c))
        if self.kind == "prime_power" and not (1 <= self.c <= MAX_PRIME_POWER_EXPONENT):
            raise SequenceError(f"prime_power exponent must lie in [1, 15/14], got {self.c}")
        if self.kind == "file" and not self.path:
            raise SequenceError("file sequence needs a path")

    def describe(self) -> str:
        if self.kind == "prime_power":
            return f"primepow:{self.c}"
        if self.kind == "file":
            return f"file:{self.path}"
        return "identity"


@dataclass(frozen=True)
class CoefficientSpec:
    kind: str = "ones"
    seed: int = 0
    path: str | None = None

    def __post_init__(self):
        if self.kind not in ("ones", "unit_random", "file"):
            raise SequenceError(f"unknown coefficient kind {self.kind!r}")
        if self.kind == "file" and not self.path:
            raise SequenceError("file coefficients need a path")

    def describe(self) -> str:
        if self.kind == "unit_random":
            return f"random:{self.seed}"
        if self.kind == "file":
            return f"file:{self.path}"
        return "ones"


def parse_sequence_spec(text: str) -> SequenceSpec:
    """Parse ``identity``, ``primepow:C`` or ``file:PATH``."""
    if text == "identity":
        return SequenceSpec()
    if text.startswith("primepow:"):
        try:
            c = Fraction(text.split(":", 1)[1])
        except ValueError as exc:
            raise SequenceError(f"bad exponent in {text!r}") from exc
        return SequenceSpec("prime_power", c=c)
    if text.startswith("file:"):
        return SequenceSpec("file", path=text.split(":", 1)[1])
    raise SequenceError(f"unrecognised sequence spec {text!r}")


def parse_coefficient_spec(text: str) -> CoefficientSpec:
    """Parse ``ones``, ``random:SEED`` or ``file:PATH``."""
    if text == "ones":
        return CoefficientSpec()
    if text.startswith("random:"):
        try:
            seed = int(text.split(":", 1)[1], 0)
        except ValueError as exc:
            raise SequenceError(f"bad seed in {text!r}") from exc
        return CoefficientSpec("unit_random", seed=seed & _MASK64)
    if text.startswith("file:"):
        return CoefficientSpec("file", path=text.split(":", 1)[1])
    raise SequenceError(f"unrecognised coefficient spec {text!r}")


def nth_primes(count: int) -> np.ndarray:
    """The first ``count`` primes as an int64 array."""
    if count <= 0:
        return np.empty(0, dtype=np.int64)
    # Rosser's bound p_n < n (ln n + ln ln n) for n >= 6.
    if count < 6:
        limit = 13
    else:
        limit = int(count * (math.log(count) + math.log(math.log(count)))) + 1
    primes = prime_array(limit)
    return primes[:count]


def _floor_root_power(q: int, c: Fraction) -> int:
    # Exact floor(q ** (num/den)) = largest m with m**den <= q**num.
    target = q**c.numerator
    m = int(round(q ** float(c)))
    while m**c.denominator > target:
        m -= 1
    while (m + 1) ** c.denominator <= target:
        m += 1
    return m


def _prime_power_sequence(T: int, c: Fraction) -> np.ndarray:
    q = nth_primes(T)
    if c.denominator == 1:
        return q ** c.numerator
    vals = q.astype(np.float64) ** float(c)
    out = np.floor(vals).astype(np.int64)
    # Floor is only unsafe when the float lands close to an integer.
    tol = 1e-9 + 8 * np.finfo(np.float64).eps * vals
    risky = np.flatnonzero(np.abs(vals - np.round(vals)) < tol)
    for i in risky:
        out[i] = _floor_root_power(int(q[i]), c)
    return out


def _read_sequence_file(path: str | Path, T: int) -> np.ndarray:
    values = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                values.append(int(line))
            except ValueError as exc:
                raise SequenceError(f"{path}:{lineno}: not an integer: {line!r}") from exc
            if len(values) == T:
                break
    if len(values) < T:
        raise SequenceError(f"{path} holds {len(values)} terms, need {T}")
    return np.array(values, dtype=np.int64)


def validate_increasing(s: np.ndarray) -> None:
    if len(s) and s[0] < 1:
        raise SequenceError(f"s_1 = {s[0]} is not positive")
    bad = np.flatnonzero(np.diff(s) <= 0)
    if len(bad):
        i = int(bad[0]) + 2
        raise SequenceError(f"sequence not strictly increasing at index {i} (s_{i} = {s[i - 1]})")


def gen_s(spec: SequenceSpec, T: int) -> np.ndarray:
    """``s_1, ..., s_T`` as an int64 array, validated strictly increasing."""
    if T < 1:
        raise SequenceError("T must be >= 1")
    if spec.kind == "identity":
        s = np.arange(1, T + 1, dtype=np.int64)
    elif spec.kind == "prime_power":
        s = _prime_power_sequence(T, spec.c)
    else:
        s = _read_sequence_file(spec.path, T)
    validate_increasing(s)
    return s


def splitmix64(x):
    """SplitMix64 finalizer of ``x`` (int or uint64 array), wrapping mod 2**64."""
    if isinstance(x, np.ndarray):
        z = x.astype(np.uint64) + np.uint64(0x9E3779B97F4A7C15)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        return z ^ (z >> np.uint64(31))
    z = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def unit_random(seed: int, T: int) -> np.ndarray:
    # Counter based: gamma_n depends only on (seed, n).
    n = np.arange(1, T + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = splitmix64(n + np.uint64(seed & _MASK64))
    u = z.astype(np.float64) * 2.0**-64
    return np.exp(2j * np.pi * u)


def _read_coefficient_file(path: str | Path, T: int) -> np.ndarray:
    values = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            parts = line.split()
            if not parts or parts[0].startswith("#"):
                continue
            if len(parts) != 2:
                raise SequenceError(f"{path}:{lineno}: expected 're im', got {line.strip()!r}")
            try:
                values.append(complex(float(parts[0]), float(parts[1])))
            except ValueError as exc:
                raise SequenceError(f"{path}:{lineno}: bad number") from exc
            if len(values) == T:
                break
    if len(values) < T:
        raise SequenceError(f"{path} holds {len(values)} coefficients, need {T}")
    gamma = np.array(values, dtype=np.complex128)
    over = np.flatnonzero(np.abs(gamma) > 1 + 1e-12)
    if len(over):
        i = int(over[0]) + 1
        raise SequenceError(f"|gamma_{i}| = {abs(gamma[i - 1]):.6g} exceeds 1")
    return gamma


def gen_gamma(spec: CoefficientSpec, T: int) -> np.ndarray:
    """``gamma_1, ..., gamma_T`` as a complex128 array with moduli at most 1."""
    if T < 1:
        raise SequenceError("T must be >= 1")
    if spec.kind == "ones":
        return np.ones(T, dtype=np.complex128)
    if spec.kind == "unit_random":
        return unit_random(spec.seed, T)
    return _read_coefficient_file(spec.path, T)


def sparsity_report(s, e) -> tuple[float, bool]:
    """``(max_n s_n / n**e, s_T <= T**e)`` evaluated in floating point."""
    s = np.asarray(s, dtype=np.float64)
    if len(s) == 0:
        raise SequenceError("empty sequence")
    e = float(e)
    n = np.arange(1, len(s) + 1, dtype=np.float64)
    ratios = s / n**e
    T = len(s)
    return float(ratios.max()), bool(s[-1] <= T**e)


def empirical_exponent(s) -> float:
    """``log s_T / log T``: the growth exponent actually realised at ``T``."""
    s = np.asarray(s)
    T = len(s)
    if T < 2:
        return float("nan")
    return math.log(float(s[-1])) / math.log(T)
