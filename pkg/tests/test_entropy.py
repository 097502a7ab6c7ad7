import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import brentq

from adderbound.entropy import (
    binary_convolve,
    binary_entropy,
    binary_entropy_inv,
    entropy,
)

probs = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


def test_base_two():
    # logs are base 2 everywhere
    assert entropy((0.5, 0.5)) == 1.0
    assert binary_entropy(0.5) == 1.0


def test_edge_values():
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert binary_entropy_inv(0.0) == 0.0
    assert binary_entropy_inv(1.0) == 0.5


@given(st.floats(min_value=1e-4, max_value=1.0, allow_nan=False))
@settings(max_examples=300)
def test_symmetry(p):
    assert abs(binary_entropy(p) - binary_entropy(1.0 - p)) <= 1e-15


@given(probs)
@settings(max_examples=300)
def test_symmetry_full_range(p):
    # For p below ~1e-4 the rounding of 1-p perturbs the small argument by
    # up to half an ulp of 1, which moves h by ~|log2 p| * 2^-54; near the
    # representation floor (p ~ 2^-53) that gap reaches a few 1e-15, so the
    # tail gets a looser budget than the mid-range check above.
    assert abs(binary_entropy(p) - binary_entropy(1.0 - p)) <= 4e-15


@given(st.floats(min_value=0.0, max_value=1.0, allow_nan=False))
@settings(max_examples=300)
def test_inverse_roundtrip(x):
    p = binary_entropy_inv(x)
    assert 0.0 <= p <= 0.5
    assert abs(binary_entropy(p) - x) <= 1e-10


def test_inverse_against_root_finder():
    # independent oracle: scipy's brentq on the same equation
    for x in np.linspace(0.01, 0.99, 25):
        want = brentq(lambda p: binary_entropy(p) - x, 1e-15, 0.5, xtol=1e-14)
        got = binary_entropy_inv(float(x))
        assert abs(got - want) <= 1e-9, (x, got, want)


def test_inverse_known_value():
    assert abs(binary_entropy_inv(0.5) - 0.110028) <= 1e-6


def test_vectorized_matches_scalar():
    ps = np.linspace(0.0, 1.0, 257)
    vec = binary_entropy(ps)
    for p, v in zip(ps, vec):
        assert v == binary_entropy(float(p))


def test_input_clamping_and_rejection():
    assert binary_entropy(-1e-13) == 0.0
    assert binary_entropy(1.0 + 1e-13) == 0.0
    with pytest.raises(ValueError):
        binary_entropy(-1e-9)
    with pytest.raises(ValueError):
        binary_entropy(1.1)
    with pytest.raises(ValueError):
        binary_entropy(float("nan"))
    with pytest.raises(ValueError):
        binary_entropy_inv(1.0 + 1e-9)
    with pytest.raises(ValueError):
        entropy((0.3, 0.3))
    with pytest.raises(ValueError):
        entropy((0.5, -0.1, 0.6))
    with pytest.raises(ValueError):
        entropy(())


@given(probs, probs)
@settings(max_examples=300)
def test_convolve_commutative(p, q):
    assert abs(binary_convolve(p, q) - binary_convolve(q, p)) <= 1e-15


@given(probs, probs, probs)
@settings(max_examples=300)
def test_convolve_associative(p, q, r):
    a = binary_convolve(p, binary_convolve(q, r))
    b = binary_convolve(binary_convolve(p, q), r)
    assert abs(a - b) <= 1e-15


def test_convolve_fixed_point():
    # a uniform bit absorbs anything
    for p in np.linspace(0, 1, 11):
        assert abs(binary_convolve(float(p), 0.5) - 0.5) <= 1e-15


def _random_pmf3(rng):
    m = rng.random(3)
    return m / m.sum()


def test_grouping_rule():
    rng = np.random.default_rng(7)
    for _ in range(500):
        p0, p1, p2 = _random_pmf3(rng)
        if p0 >= 1.0 - 1e-12:
            continue
        want = binary_entropy(p0) + (1.0 - p0) * binary_entropy(p1 / (1.0 - p0))
        got = entropy((p0, p1, p2))
        assert abs(got - want) <= 1e-12, (p0, p1, p2)


def test_grouping_upper_bound_and_equality():
    rng = np.random.default_rng(8)
    for _ in range(500):
        p0, p1, p2 = _random_pmf3(rng)
        val = entropy((p0, p1, p2))
        cap = binary_entropy(p0) + 1.0 - p0
        assert val <= cap + 1e-12
        # the gap scales like (p1-p2)^2, so only assert strictness where it
        # is numerically visible
        if abs(p1 - p2) > 1e-4:
            assert val < cap - 1e-12, (p0, p1, p2)
    # equality exactly at p1 = p2
    for p0 in (0.1, 0.5, 0.9):
        half = (1.0 - p0) / 2.0
        val = entropy((p0, half, half))
        cap = binary_entropy(p0) + 1.0 - p0
        assert abs(val - cap) <= 1e-12
