import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from expsieve.discrepancy import (
    PointSet,
    decay_exponent,
    erdos_turan_bound,
    extreme_discrepancy,
    fractional_parts,
    star_discrepancy,
)
from oracles import extreme_discrepancy_grid


def test_fractional_parts_examples():
    assert fractional_parts(2, 5, [1, 2, 3, 4]).points.tolist() == pytest.approx([0.4, 0.8, 0.6, 0.2])
    assert fractional_parts(2, 3, [1]).points.tolist() == pytest.approx([2 / 3])
    assert fractional_parts(2, 7, [3]).points.tolist() == pytest.approx([1 / 7])
    with pytest.raises(ValueError):
        fractional_parts(2, 2, [1])


def test_point_set_validation():
    with pytest.raises(ValueError):
        PointSet([1.0])
    with pytest.raises(ValueError):
        PointSet([-0.1])
    with pytest.raises(ValueError):
        star_discrepancy(PointSet([]))
    with pytest.raises(ValueError):
        extreme_discrepancy(PointSet([]))


def test_star_examples():
    assert star_discrepancy(PointSet([0.5])) == pytest.approx(0.5)
    assert star_discrepancy(PointSet([0.25, 0.75])) == pytest.approx(0.25)
    assert star_discrepancy(PointSet([0, 0.25, 0.5, 0.75])) == pytest.approx(0.25)


def test_extreme_examples():
    # A single point: [0.5, 0.5 + eps) holds the point and has length eps,
    # so the supremum is 1, not the 0.5 of the anchored interval [0, 0.5).
    assert extreme_discrepancy(PointSet([0.5])) == pytest.approx(1.0)
    assert extreme_discrepancy(PointSet([0, 0.5])) == pytest.approx(0.5)
    assert extreme_discrepancy(PointSet([0, 0.25, 0.5, 0.75])) == pytest.approx(0.25)
    assert extreme_discrepancy(PointSet([0.25, 0.75])) == pytest.approx(0.5)


def test_erdos_turan_examples():
    assert erdos_turan_bound(PointSet([0, 0.25, 0.5, 0.75]), 3) == pytest.approx(0.25)
    assert erdos_turan_bound(PointSet([0, 0.5]), 1) == pytest.approx(0.5)
    assert erdos_turan_bound(PointSet([0.5]), 1) == pytest.approx(3.5)


def test_grid_oracle_is_lower_bound_within_two_steps():
    # Grid intervals are genuine intervals, so the oracle never exceeds the
    # supremum; each endpoint is off by at most one step 1/(4N^2).
    rng = np.random.default_rng(0)
    for _ in range(50):
        n = int(rng.integers(1, 15))
        pts = rng.random(n)
        d = extreme_discrepancy(PointSet(pts))
        g = extreme_discrepancy_grid(pts)
        assert g - 1e-12 <= d <= g + 2 / (4 * n * n) + 1e-12


@settings(max_examples=150, deadline=None)
@given(st.lists(st.floats(0, 1, exclude_max=True), min_size=1, max_size=50))
def test_discrepancy_properties(pts):
    ps = PointSet(pts)
    n = ps.N
    d_star = star_discrepancy(ps)
    d = extreme_discrepancy(ps)
    assert 1 / (2 * n) - 1e-12 <= d_star <= 1
    assert d_star - 1e-12 <= d <= 2 * d_star + 1e-12
    assert abs(d - extreme_discrepancy_grid(pts)) <= 1 / (2 * n * n) + 1e-12
    for H in {1, math.isqrt(n), 100}:
        assert erdos_turan_bound(ps, H) >= d - 1e-12


def test_erdos_turan_default_H():
    ps = PointSet(np.arange(16) / 16)
    assert erdos_turan_bound(ps) == pytest.approx(erdos_turan_bound(ps, 4))


def test_decay_exponent_recovers_power_law():
    X = np.array([1e3, 1e4, 1e5, 1e6])
    eps1, C = decay_exponent(X, 0.7 * np.log(X) ** -0.35)
    assert eps1 == pytest.approx(0.35) and C == pytest.approx(0.7)
    with pytest.raises(ValueError):
        decay_exponent([100], [0.1])
