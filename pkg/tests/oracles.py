"""Brute-force reference computations.

None of these touch the package's fast paths: orders come from iterating
powers, divisor counts from trial division, residues from vectorised
square-and-multiply, and sums are evaluated term by term with ``np.exp``.
"""
import math

import numpy as np


def primes_upto(n):
    return [k for k in range(2, n + 1) if all(k % d for d in range(2, math.isqrt(k) + 1))]


def is_prime_trial(n):
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


def order_by_iteration(lam, p):
    x, t = lam % p, 1
    while x != 1:
        x = x * lam % p
        t += 1
    return t


def tau_trial(n):
    return sum(2 - (d * d == n) for d in range(1, math.isqrt(n) + 1) if n % d == 0)


def powmod_vector(lam, exps, p):
    """``lam**e mod p`` elementwise by square-and-multiply on the exponent bits."""
    exps = np.asarray(exps, dtype=np.int64).copy()
    result = np.ones_like(exps)
    base = np.full_like(exps, lam % p)
    while exps.any():
        odd = (exps & 1).astype(bool)
        result[odd] = result[odd] * base[odd] % p
        base = base * base % p
        exps >>= 1
    return result


def residue_weights(lam, p, s, gamma):
    r = powmod_vector(lam, s, p)
    uniq, inv = np.unique(r, return_inverse=True)
    w = np.zeros(len(uniq), dtype=np.complex128)
    np.add.at(w, inv, np.asarray(gamma, dtype=np.complex128))
    return uniq, w


def max_sigma_brute(lam, p, s, gamma):
    """``max_{1<=a<p} |sum_n gamma_n e_p(a lam^{s_n})|`` by explicit evaluation."""
    uniq, w = residue_weights(lam, p, s, gamma)
    best = 0.0
    step = max(1, (1 << 21) // max(1, len(uniq)))
    for lo in range(1, p, step):
        a = np.arange(lo, min(p, lo + step), dtype=np.int64)
        vals = np.exp(2j * np.pi * ((a[:, None] * uniq[None, :]) % p) / p) @ w
        best = max(best, float(np.abs(vals).max()))
    return best


def theorem1_lhs_brute(lam, X, Delta, s, gamma):
    total = []
    for p in primes_upto(int(X)):
        if lam % p == 0:
            continue
        if order_by_iteration(lam, p) <= Delta:
            continue
        total.append(max_sigma_brute(lam, p, s, gamma) ** 2 / tau_trial(p - 1))
    return math.fsum(total)


def gauss_max_brute(theta, p):
    t = order_by_iteration(theta, p)
    z = [pow(theta, k, p) for k in range(1, t + 1)]
    a = np.arange(1, p, dtype=np.int64)
    vals = np.exp(2j * np.pi * ((a[:, None] * np.array(z)[None, :]) % p) / p).sum(axis=1)
    return t, float(np.abs(vals).max())


def one_theta_per_order(p):
    """``{t: theta}`` with ``theta`` of order ``t`` for every ``t | p-1``, ``t > 1``."""
    out = {}
    for theta in range(2, p):
        t = order_by_iteration(theta, p)
        out.setdefault(t, theta)
        if len(out) == tau_trial(p - 1) - 1:
            break
    return out


def extreme_discrepancy_grid(points):
    """Discrepancy over intervals with endpoints on the grid ``k / (4 N^2)``."""
    x = np.sort(np.asarray(points, dtype=np.float64))
    n = len(x)
    g = np.arange(4 * n * n + 1) / (4 * n * n)
    below = np.searchsorted(x, g, side="left") / n  # fraction of points < g
    f = below - g
    # max over a <= b of |f(b) - f(a)|
    up = np.max(f - np.minimum.accumulate(f))
    down = np.max(np.maximum.accumulate(f) - f)
    return float(max(up, down))


def large_sieve_brute(s, gamma, K):
    total = 0.0
    for k in range(1, K + 1):
        for c in range(1, k + 1):
            if math.gcd(c, k) != 1:
                continue
            z = sum(g * complex(math.cos(2 * math.pi * c * sn / k), math.sin(2 * math.pi * c * sn / k)) for sn, g in zip(s, gamma))
            total += abs(z) ** 2
    return total
