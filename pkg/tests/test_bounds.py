import math
from math import comb

import pytest
from hypothesis import given, strategies as st

from mrlimits import (
    Problem,
    generic_lower_bound,
    hd1_cover_bound,
    hd1_lower_bound,
    multiway_join_bound_estimate,
    stirling_central,
    triangle_cover_bound,
    triangle_lower_bound,
    universe_counts,
    weight_cell_estimate,
)
from mrlimits.bounds import lower_bound


def test_hd1_cover_bound():
    assert hd1_cover_bound(1).value == 0
    assert hd1_cover_bound(2).value == 1
    assert hd1_cover_bound(4).value == 4
    assert hd1_cover_bound(8).exact


def test_hd1_lower_bound():
    for b in (1, 5, 12):
        assert hd1_lower_bound(b, 2).value == b
        assert hd1_lower_bound(b, 2**b).value == pytest.approx(1, abs=1e-15)
    assert hd1_lower_bound(6, 4).value == 3
    with pytest.raises(ValueError):
        hd1_lower_bound(4, 1)


def test_triangle_bounds():
    assert triangle_cover_bound(2).value == pytest.approx(4 / 3)
    assert triangle_lower_bound(6, 15).value == pytest.approx(6 / math.sqrt(30))
    assert triangle_lower_bound(100, 50).value == pytest.approx(10, abs=1e-12)


def test_universe_counts_examples():
    assert universe_counts(Problem.hd1(3)) == (8, 12)
    assert universe_counts(Problem.triangle(4)) == (6, 4)
    assert universe_counts(Problem.join(2, 3, 4)) == (18, 24)
    assert universe_counts(Problem.groupby(2, 3)) == (6, 2)


@given(st.integers(1, 40), st.floats(2, 2**40))
def test_generic_reproduces_hd1(b, q):
    got = generic_lower_bound(2**b, (b / 2) * 2**b, hd1_cover_bound, q).value
    assert got == pytest.approx(hd1_lower_bound(b, q).value, rel=1e-12)


@given(st.integers(3, 10**6), st.floats(1, 1e12))
def test_generic_reproduces_triangle(n, q):
    got = generic_lower_bound(n**2 / 2, n**3 / 6, triangle_cover_bound, q).value
    assert got == pytest.approx(triangle_lower_bound(n, q).value, rel=1e-12)


@given(st.integers(1, 1000), st.integers(1, 10**6), st.floats(1, 1e6))
def test_generic_identity_cover(i, o, q):
    assert generic_lower_bound(i, o, lambda x: x, q).value == pytest.approx(o / i, rel=1e-12)


def test_generic_rejects_zero_cover():
    with pytest.raises(ValueError):
        generic_lower_bound(8, 12, hd1_cover_bound, 1)


@given(st.floats(2, 1e9), st.floats(2, 1e9))
def test_monotonicity(q1, q2):
    lo, hi = sorted((q1, q2))
    assert hd1_lower_bound(10, lo).value >= hd1_lower_bound(10, hi).value
    assert hd1_cover_bound(lo).value <= hd1_cover_bound(hi).value
    assert triangle_cover_bound(lo).value <= triangle_cover_bound(hi).value


def test_stirling_vs_exact():
    est = stirling_central(8)
    assert not est.exact
    assert est.value == pytest.approx(2**8 / math.sqrt(16 * math.pi))
    assert est.value == pytest.approx(36.1, abs=0.05)
    assert comb(8, 4) == 70
    # this form is half the true asymptotic sqrt(2/(pi n)) 2^n, so the ratio tends to 1/2
    ratios = [stirling_central(n).value / comb(n, n // 2) for n in (8, 32, 128, 512)]
    assert ratios == sorted(ratios, reverse=True)
    assert ratios[-1] == pytest.approx(0.5, abs=1e-3)
    with pytest.raises(ValueError):
        stirling_central(7)


def test_weight_cell_estimate():
    est = weight_cell_estimate(16, 2, 2)
    assert not est.exact
    assert est.value == pytest.approx(4 * 2**16 / (16 * math.pi))
    assert est.value == pytest.approx(5215.2, abs=0.1)
    assert weight_cell_estimate(8, 2, 2).value == pytest.approx(40.7, abs=0.05)
    # d=2 agrees with the 2-D closed form
    assert weight_cell_estimate(12, 2, 3).value == pytest.approx(9 * 2**12 / (math.pi * 12))
    with pytest.raises(ValueError):
        weight_cell_estimate(10, 3, 1)


def test_weight_cell_estimate_vs_census():
    # most populous home cell for b=16, k=2: half-weights {4,5} each -> (70 + 56)^2
    census = (comb(8, 4) + comb(8, 5)) ** 2
    assert census == 15876
    assert weight_cell_estimate(16, 2, 2).value < census


def test_multiway_join_estimate():
    est = multiway_join_bound_estimate(64, 10, 3, 2)
    assert not est.exact
    assert est.value == pytest.approx(10 / 8)
    assert multiway_join_bound_estimate(123, 45, 3, 3).value == 1
    assert multiway_join_bound_estimate(100, 10, 4, 2).value == pytest.approx(1)
    with pytest.raises(ValueError):
        multiway_join_bound_estimate(10, 10, 1, 2)


def test_lower_bound_dispatch():
    assert lower_bound(Problem.hd1(4), 4).value == 2
    assert lower_bound(Problem.hd1(4), 1).value == math.inf
    assert lower_bound(Problem.triangle(100), 50).value == pytest.approx(10)
    assert lower_bound(Problem.join(2, 3, 4), 6).value == 1
