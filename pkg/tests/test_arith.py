import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from expsieve.arith import (
    FactoredInteger,
    OrderUndefinedError,
    divisors,
    factorize,
    is_prime,
    mult_order,
    omega,
    powmod,
    primitive_root,
    sieve_primes,
    tau,
)
from oracles import is_prime_trial, order_by_iteration, primes_upto


def test_sieve_examples():
    assert sieve_primes(10) == [2, 3, 5, 7]
    assert sieve_primes(2) == [2]
    assert sieve_primes(1) == []
    assert sieve_primes(0) == []
    hundred = sieve_primes(100)
    assert hundred == primes_upto(100)
    assert len(hundred) == 25 and hundred[-1] == 97


def test_sieve_agrees_with_is_prime():
    primes = set(sieve_primes(10_000))
    for n in range(2, 10_001):
        assert (n in primes) == is_prime(n)


@pytest.mark.parametrize("n, expected", [(1, False), (2, True), (9991, False), (104729, True), (65537, True), (65521, True)])
def test_is_prime_examples(n, expected):
    assert is_prime(n) is expected
    assert is_prime_trial(n) is expected


@pytest.mark.parametrize(
    "n",
    [
        3215031751,  # strong pseudoprime to bases 2, 3, 5, 7
        3825123056546413051,  # strong pseudoprime to bases up to 23
        318665857834031151167461,  # beyond 64 bits; still composite for the full base set
    ],
)
def test_is_prime_rejects_strong_pseudoprimes(n):
    assert not is_prime(n)


def test_is_prime_large_known():
    assert is_prime(2**61 - 1)
    assert is_prime(18446744073709551557)  # largest prime below 2^64
    assert not is_prime((2**31 - 1) * (2**31 - 19))


def test_factorize_examples():
    assert factorize(1) == FactoredInteger(1, ())
    assert factorize(12).as_dict() == {2: 2, 3: 1}
    assert factorize(9991).as_dict() == {97: 1, 103: 1}
    with pytest.raises(ValueError):
        factorize(0)
    with pytest.raises(ValueError):
        factorize(2**63)


def test_factorize_hard_cases():
    p, q = 2147483629, 2147483647
    assert factorize(p * q).as_dict() == {p: 1, q: 1}
    assert factorize(65537**3).as_dict() == {65537: 3}
    assert factorize(2147483647**2).as_dict() == {2147483647: 2}
    assert factorize(2**62).as_dict() == {2: 62}


def test_factorize_random_63_bit_reconstructs():
    rng = random.Random(20261019)
    for _ in range(10_000):
        n = rng.randrange(1, 2**63)
        f = factorize(n)
        assert math.prod(p**e for p, e in f.factors) == n
        assert all(is_prime(p) for p in f.primes)
        assert f.primes == sorted(set(f.primes))


def test_factored_integer_validates():
    with pytest.raises(ValueError):
        FactoredInteger(12, ((3, 1), (2, 2)))
    with pytest.raises(ValueError):
        FactoredInteger(12, ((2, 1), (3, 1)))
    with pytest.raises(ValueError):
        FactoredInteger(0, ())


def test_divisors_examples():
    assert divisors(factorize(12)) == [1, 2, 3, 4, 6, 12]
    assert divisors(factorize(1)) == [1]
    assert divisors(factorize(9991)) == [1, 97, 103, 9991]


def test_divisor_count_matches_tau():
    for n in range(1, 10_001):
        f = factorize(n)
        divs = divisors(f)
        assert len(divs) == tau(f)
        assert divs == sorted(divs)


def test_tau_omega_examples():
    assert tau(factorize(6)) == 4
    assert tau(factorize(12)) == 6
    assert omega(factorize(12)) == 2
    assert omega(factorize(1)) == 0
    assert tau(factorize(1)) == 1


def test_powmod_examples():
    assert powmod(3, 0, 7) == 1
    assert powmod(2, 10, 1000) == 24
    assert powmod(2, 100, 101) == 1
    big = 2**63 - 25
    assert powmod(big - 1, 2, big) == 1
    with pytest.raises(ValueError):
        powmod(2, 3, 1)


def test_mult_order_examples():
    assert mult_order(2, 7) == 3
    assert mult_order(2, 11) == 10 == order_by_iteration(2, 11)
    with pytest.raises(OrderUndefinedError):
        mult_order(2, 2)


@pytest.mark.parametrize("lam", [2, 3, 10])
def test_mult_order_properties(lam):
    for p in sieve_primes(10_000):
        if lam % p == 0:
            continue
        t = mult_order(lam, p)
        assert pow(lam, t, p) == 1
        assert (p - 1) % t == 0
        for q in factorize(t).primes:
            assert pow(lam, t // q, p) != 1


def test_mult_order_matches_iteration_small():
    for p in sieve_primes(600):
        for lam in (2, 3, 5, 10):
            if lam % p:
                assert mult_order(lam, p) == order_by_iteration(lam, p)


def test_primitive_root():
    assert primitive_root(7) == 3
    for p in sieve_primes(500)[1:]:
        assert mult_order(primitive_root(p), p) == p - 1


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=1, max_value=2**63 - 1))
def test_factorize_property(n):
    f = factorize(n)
    assert math.prod(p**e for p, e in f.factors) == n
    assert all(e >= 1 for _, e in f.factors)
