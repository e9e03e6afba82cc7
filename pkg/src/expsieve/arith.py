"""Exact integer arithmetic: primes, factorization, divisors and multiplicative orders.

Everything here works on Python integers, so products of two 64-bit residues
never overflow. Inputs are limited to ``n < 2**63``.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "FactoredInteger",
    "OrderUndefinedError",
    "divisors",
    "factorize",
    "is_prime",
    "mult_order",
    "omega",
    "powmod",
    "prime_array",
    "primitive_root",
    "sieve_primes",
    "tau",
]

TRIAL_LIMIT = 1 << 16
MAX_N = 1 << 63

# Deterministic strong-pseudoprime bases for every n < 3.3e24 (Sorenson & Webster).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


class OrderUndefinedError(ValueError):
    """Raised when the modulus divides the base, so no multiplicative order exists."""


@dataclass(frozen=True)
class FactoredInteger:
    n: int
    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"FactoredInteger needs n >= 1, got {self.n}")
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factor list {self.factors!r}")
            last = p
            prod *= p**e
        if prod != self.n:
            raise ValueError(f"factors multiply to {prod}, not {self.n}")

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)


def sieve_primes(limit: int) -> list[int]:
    """All primes ``<= limit`` in ascending order (empty when ``limit < 2``)."""
    return prime_array(limit).tolist()


def prime_array(limit: int) -> np.ndarray:
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if flags[p]:
            flags[p * p :: 2 * p] = False
    return np.flatnonzero(flags).astype(np.int64)


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    return tuple(sieve_primes(TRIAL_LIMIT - 1))


@lru_cache(maxsize=1)
def _small_prime_blocks() -> tuple[tuple[int, tuple[int, ...]], ...]:
    # Primes grouped into blocks with their product, so one gcd can rule out a
    # whole block during trial division.
    primes = _small_primes()
    blocks = []
    size = 64
    for i in range(0, len(primes), size):
        chunk = primes[i : i + size]
        blocks.append((math.prod(chunk), chunk))
    return tuple(blocks)


def _strong_probable_prime(n: int, a: int) -> bool:
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < TRIAL_LIMIT:
        if n < 4:
            return True
        if n % 2 == 0:
            return False
        for p in _small_primes()[1:]:
            if p * p > n:
                return True
            if n % p == 0:
                return False
        return True
    if n % 2 == 0:
        return False
    return all(_strong_probable_prime(n, a) for a in _MR_BASES)


def powmod(base: int, exp: int, m: int) -> int:
    """``base**exp mod m`` in ``[0, m)``."""
    if m < 2:
        raise ValueError("modulus must be >= 2")
    if exp < 0:
        raise ValueError("exponent must be nonnegative")
    return pow(base, exp, m)


def _brent_rho(n: int, seed: int) -> int:
    # Brent's cycle finding with products of |x - y| accumulated between gcds.
    rng = random.Random(seed)
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r <<= 1
        if g == n:
            # Batched product hit zero; replay one step at a time.
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split_large(n: int, out: dict[int, int]) -> None:
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack.extend((r, r))
            continue
        d = _brent_rho(m, seed=m & 0xFFFF)
        stack.extend((d, m // d))


def factorize(n: int) -> FactoredInteger:
    """Factor ``1 <= n < 2**63``: block trial division below 2**16, then Brent-Pollard rho."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    if n >= MAX_N:
        raise ValueError(f"{n} exceeds the 63-bit range")
    found: dict[int, int] = {}
    m = n
    for prod, chunk in _small_prime_blocks():
        if m == 1:
            break
        if math.gcd(prod, m) == 1:
            continue
        for p in chunk:
            if m % p == 0:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                found[p] = e
    if m > 1:
        _split_large(m, found)
    return FactoredInteger(n, tuple(sorted(found.items())))


def _as_factored(f: FactoredInteger | int) -> FactoredInteger:
    return f if isinstance(f, FactoredInteger) else factorize(f)


def divisors(f: FactoredInteger | int) -> list[int]:
    f = _as_factored(f)
    divs = [1]
    for p, e in f.factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def tau(f: FactoredInteger | int) -> int:
    return math.prod(e + 1 for _, e in _as_factored(f).factors)


def omega(f: FactoredInteger | int) -> int:
    return len(_as_factored(f).factors)


def mult_order(lam: int, p: int, pm1: FactoredInteger | None = None) -> int:
    """Multiplicative order of ``lam`` modulo the prime ``p``.

    Starts from ``p - 1`` and strips each prime factor while the power stays 1.
    ``pm1`` may carry a precomputed factorization of ``p - 1``.
    """
    if lam % p == 0:
        raise OrderUndefinedError(f"{p} divides {lam}; order undefined")
    if pm1 is None:
        pm1 = factorize(p - 1)
    t = p - 1
    for q, e in pm1.factors:
        for _ in range(e):
            if pow(lam, t // q, p) != 1:
                break
            t //= q
    return t


def primitive_root(p: int, pm1: FactoredInteger | None = None) -> int:
    """Smallest primitive root modulo the prime ``p``."""
    if p == 2:
        return 1
    if pm1 is None:
        pm1 = factorize(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in pm1.primes):
            return g
    raise ValueError(f"{p} is not prime")
