import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from expsieve.arith import sieve_primes
from expsieve.seqgen import (
    CoefficientSpec,
    SequenceError,
    SequenceSpec,
    gen_gamma,
    gen_s,
    nth_primes,
    parse_coefficient_spec,
    parse_sequence_spec,
    sparsity_report,
    splitmix64,
)

C_MAX = Fraction(15, 14)


def test_identity_and_prime_power_examples():
    assert gen_s(SequenceSpec(), 3).tolist() == [1, 2, 3]
    assert gen_s(SequenceSpec("prime_power", c=1), 4).tolist() == [2, 3, 5, 7]
    # floor(2^(15/14)), floor(3^(15/14)), floor(5^(15/14))
    expected = [math.floor(q ** (15 / 14)) for q in (2, 3, 5)]
    assert expected == [2, 3, 5]
    assert gen_s(SequenceSpec("prime_power", c=C_MAX), 3).tolist() == expected


def test_prime_power_matches_exact_integer_floor():
    s = gen_s(SequenceSpec("prime_power", c=C_MAX), 20_000)
    q = nth_primes(20_000).tolist()
    for i in range(0, 20_000, 7):
        m = int(s[i])
        assert m**14 <= q[i] ** 15 < (m + 1) ** 14


def test_prime_power_c1_is_the_primes():
    assert gen_s(SequenceSpec("prime_power", c=1), 5000).tolist() == sieve_primes(48_611)


def test_prime_power_exponent_range():
    with pytest.raises(SequenceError):
        SequenceSpec("prime_power", c=Fraction(3, 2))
    with pytest.raises(SequenceError):
        SequenceSpec("prime_power", c=Fraction(1, 2))


@pytest.mark.parametrize("spec", [SequenceSpec(), SequenceSpec("prime_power", c=C_MAX), SequenceSpec("prime_power", c=Fraction(21, 20))])
def test_generated_sequences_strictly_increasing(spec):
    s = gen_s(spec, 100_000)
    assert s[0] >= 1
    assert np.all(np.diff(s) > 0)


def test_sequence_file(tmp_path):
    path = tmp_path / "s.txt"
    path.write_text("1\n4\n9\n16\n")
    assert gen_s(SequenceSpec("file", path=str(path)), 3).tolist() == [1, 4, 9]
    path.write_text("1\n4\n4\n16\n")
    with pytest.raises(SequenceError, match="index 3"):
        gen_s(SequenceSpec("file", path=str(path)), 4)
    with pytest.raises(SequenceError):
        gen_s(SequenceSpec("file", path=str(path)), 10)


def test_gamma_ones():
    assert gen_gamma(CoefficientSpec(), 3).tolist() == [1, 1, 1]


def test_splitmix64_reference_vectors():
    # First outputs of the SplitMix64 generator seeded with 0.
    assert splitmix64(0) == 0xE220A8397B1DCDAF
    assert splitmix64(0x9E3779B97F4A7C15) == 0x6E789E6AA1B965F4
    assert splitmix64(2 * 0x9E3779B97F4A7C15 % 2**64) == 0x06C45D188009454F


def test_unit_random_values():
    g = gen_gamma(CoefficientSpec("unit_random", seed=0), 1000)
    assert np.max(np.abs(np.abs(g) - 1)) < 1e-15
    g1 = gen_gamma(CoefficientSpec("unit_random", seed=1), 3)
    expected = cmath.exp(2j * math.pi * splitmix64(2) / 2**64)
    assert abs(g1[0] - expected) < 1e-15


def test_unit_random_reproducible_and_prefix_stable():
    spec = CoefficientSpec("unit_random", seed=12345)
    a = gen_gamma(spec, 5000)
    b = gen_gamma(spec, 5000)
    assert a.tobytes() == b.tobytes()
    # Counter based: a shorter run is a bitwise prefix of a longer one.
    assert gen_gamma(spec, 100).tobytes() == a[:100].tobytes()


def test_unit_random_seed_wraps():
    spec = CoefficientSpec("unit_random", seed=2**64 - 1)
    g = gen_gamma(spec, 2)
    assert abs(g[0] - cmath.exp(2j * math.pi * splitmix64(0) / 2**64)) < 1e-15


def test_coefficient_file(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("1 0\n0 -1\n0.6 0.8\n")
    g = gen_gamma(CoefficientSpec("file", path=str(path)), 3)
    assert g.tolist() == [1, -1j, 0.6 + 0.8j]
    path.write_text("1 0\n1 1\n")
    with pytest.raises(SequenceError, match="exceeds 1"):
        gen_gamma(CoefficientSpec("file", path=str(path)), 2)


def test_sparsity_report_examples():
    assert sparsity_report([1, 2, 3], 1) == (1.0, True)
    assert sparsity_report([10, 20, 30], 1) == (10.0, False)
    # s_1 / 1 = 2 dominates; 5 > 3^(15/14) ~ 3.245.
    ratio, ok = sparsity_report([2, 3, 5], C_MAX)
    assert ratio == pytest.approx(max(2 / 1, 3 / 2 ** (15 / 14), 5 / 3 ** (15 / 14)))
    assert ratio == 2.0
    assert ok is False


def test_parse_specs():
    assert parse_sequence_spec("identity") == SequenceSpec()
    assert parse_sequence_spec("primepow:15/14").c == C_MAX
    assert parse_sequence_spec("file:/x").path == "/x"
    assert parse_coefficient_spec("random:7").seed == 7
    assert parse_coefficient_spec("ones") == CoefficientSpec()
    with pytest.raises(SequenceError):
        parse_sequence_spec("squares")
    with pytest.raises(SequenceError):
        parse_coefficient_spec("random:abc")


@settings(max_examples=50, deadline=None)
@given(st.fractions(min_value=1, max_value=C_MAX, max_denominator=50), st.integers(1, 3000))
def test_prime_power_increasing_property(c, T):
    s = gen_s(SequenceSpec("prime_power", c=c), T)
    assert len(s) == T
    assert np.all(np.diff(s) > 0)
