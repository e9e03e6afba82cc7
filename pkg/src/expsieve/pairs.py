"""Exponent pairs for subgroup Gauss sums and the sparsity exponent they imply.

All arithmetic is exact (:class:`fractions.Fraction`), so the headline value
``f(1/8, 5/8) = 15/14`` comes out as an identity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

__all__ = [
    "ExponentPair",
    "PairRow",
    "conjecture_pair",
    "convex_combine",
    "f_exponent",
    "hbk_pairs",
    "konyagin_pair",
    "konyagin_pair_prime",
    "optimize_f",
    "sparsity_exponent",
]


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class ExponentPair:
    alpha: Fraction
    beta: Fraction
    provenance: str = "user"

    def __post_init__(self):
        object.__setattr__(self, "alpha", _frac(self.alpha))
        object.__setattr__(self, "beta", _frac(self.beta))
        if not (0 <= self.alpha <= 1 and 0 <= self.beta <= 1):
            raise ValueError(f"exponent pair ({self.alpha}, {self.beta}) outside [0, 1]^2")

    @property
    def key(self) -> tuple[Fraction, Fraction]:
        return (self.alpha, self.beta)

    def __iter__(self):
        yield self.alpha
        yield self.beta

    def __str__(self):
        return f"({self.alpha}, {self.beta})"


def konyagin_pair(n: int) -> ExponentPair:
    """``(1/(2n^2), 1 - 2/n^2 + 1/(2^(n-1) n^2))``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    n2 = Fraction(n * n)
    return ExponentPair(1 / (2 * n2), 1 - 2 / n2 + 1 / (2 ** (n - 1) * n2), f"konyagin({n})")


def konyagin_pair_prime(n: int) -> ExponentPair:
    """``(1/(2n(n+1)), 1 - 2/(n(n+1)) + 3/(2^(n+1) n(n+1)))``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    m = Fraction(n * (n + 1))
    return ExponentPair(1 / (2 * m), 1 - 2 / m + 3 / (2 ** (n + 1) * m), f"konyagin_prime({n})")


def hbk_pairs() -> list[ExponentPair]:
    """The three terms of the Heath-Brown-Konyagin bound as pairs."""
    return [
        ExponentPair(Fraction(1, 2), 0, "hbk"),
        ExponentPair(Fraction(1, 4), Fraction(3, 8), "hbk"),
        ExponentPair(Fraction(1, 8), Fraction(5, 8), "hbk"),
    ]


def f_exponent(pair) -> Fraction:
    """``1 + (1 - 2 alpha - beta) / (3 - 2 beta)``."""
    alpha, beta = (_frac(v) for v in pair)
    return 1 + (1 - 2 * alpha - beta) / (3 - 2 * beta)


def sparsity_exponent(pair) -> Fraction:
    """Growth exponent ``e`` allowed in ``s_T <= T^(e + o(1))``; equal to :func:`f_exponent`."""
    return f_exponent(pair)


def convex_combine(p1: ExponentPair, p2: ExponentPair, x) -> ExponentPair:
    x = _frac(x)
    if not 0 <= x <= 1:
        raise ValueError(f"weight {x} outside [0, 1]")
    return ExponentPair(
        x * p1.alpha + (1 - x) * p2.alpha,
        x * p1.beta + (1 - x) * p2.beta,
        f"convex({p1.provenance},{p2.provenance},{x})",
    )


def conjecture_pair(eps) -> ExponentPair:
    """``(eps, 1/2 + eps)``; valid for ``0 <= eps <= 1/2``.

    For ``eps`` near 1/2 the implied exponent drops below 1, which
    :class:`PairRow` reports as ``sub_trivial``.
    """
    eps = _frac(eps)
    if eps < 0 or eps > Fraction(1, 2):
        raise ValueError(f"conjecture pair needs 0 <= eps <= 1/2, got {eps}")
    return ExponentPair(eps, Fraction(1, 2) + eps, f"conjecture({eps})")


@dataclass(frozen=True)
class PairRow:
    pair: ExponentPair
    value: Fraction

    @property
    def sub_trivial(self) -> bool:
        return self.value < 1


def optimize_f(n_max: int = 8, grid: int = 100) -> tuple[ExponentPair, Fraction, list[PairRow]]:
    """Maximise :func:`f_exponent` over Konyagin's families and their convex combinations.

    Vertices are ``konyagin_pair(n)`` and ``konyagin_pair_prime(n)`` for
    ``n <= n_max``; each pair of vertices contributes the combinations at
    weights ``k/grid``. Ties go to the smaller ``alpha``, then smaller ``beta``.
    """
    if n_max < 1 or grid < 1:
        raise ValueError("n_max and grid must be positive")
    vertices = [konyagin_pair(n) for n in range(1, n_max + 1)]
    vertices += [konyagin_pair_prime(n) for n in range(1, n_max + 1)]
    table = [PairRow(v, f_exponent(v)) for v in vertices]
    # Integer numerators over one common denominator D keep the grid exact
    # without generic Fraction arithmetic per row.
    D = math.lcm(*(q.denominator for v in vertices for q in v))
    num = [(int(v.alpha * D), int(v.beta * D)) for v in vertices]
    Dg = D * grid
    for (i, p1), (j, p2) in combinations(enumerate(vertices), 2):
        (a1, b1), (a2, b2) = num[i], num[j]
        for k in range(1, grid):
            A = k * a1 + (grid - k) * a2
            B = k * b1 + (grid - k) * b2
            pair = ExponentPair(Fraction(A, Dg), Fraction(B, Dg), f"convex({p1.provenance},{p2.provenance},{k}/{grid})")
            table.append(PairRow(pair, Fraction(4 * Dg - 2 * A - 3 * B, 3 * Dg - 2 * B)))
    best = min(table, key=lambda row: (-row.value, row.pair.alpha, row.pair.beta))
    return best.pair, best.value, table
