import math
from math import factorial, fsum

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import j0 as scipy_j0, j1 as scipy_j1

from acphase.bessel import J0_FIRST_ZERO, J1_FIRST_ZERO, bessel_j0, bessel_j1


def series_jn(n, x, terms=60):
    """Power-series oracle, accurate for |x| <~ 12 with fsum."""
    return fsum((-1) ** k * (x / 2) ** (n + 2 * k) / (factorial(k) * factorial(n + k))
                for k in range(terms))


def test_values_at_zero():
    assert bessel_j0(0.0) == 1.0
    assert bessel_j1(0.0) == 0.0


def test_j0_at_one_frozen_series_value():
    # 40-term power series at x = 1
    assert bessel_j0(1.0) == pytest.approx(0.7651976865579666, abs=1e-14)


def test_first_zeros():
    assert abs(bessel_j0(J0_FIRST_ZERO)) < 1e-12
    assert abs(bessel_j1(J1_FIRST_ZERO)) < 1e-12


# beyond |x| ~ 8 the alternating series cancels ~1e3 of precision, so the
# oracle itself is only good to ~1e-13 there; scipy covers the larger range
@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=-8.0, max_value=8.0))
def test_against_series_oracle(x):
    assert bessel_j0(x) == pytest.approx(series_jn(0, x), abs=5e-13)
    assert bessel_j1(x) == pytest.approx(series_jn(1, x), abs=5e-13)


def test_against_scipy_up_to_50():
    x = np.linspace(-50.0, 50.0, 4001)
    assert np.max(np.abs(bessel_j0(x) - scipy_j0(x))) < 1e-12
    assert np.max(np.abs(bessel_j1(x) - scipy_j1(x))) < 1e-12


def test_parity():
    x = np.linspace(0.1, 40.0, 57)
    assert np.allclose(bessel_j0(-x), bessel_j0(x), rtol=0, atol=0)
    assert np.allclose(bessel_j1(-x), -bessel_j1(x), rtol=0, atol=0)


def test_j1_asymptotic_form():
    """J1(x) ~ sqrt(2/(pi x)) cos(x - 3 pi/4) for large x."""
    for x in (200.0, 500.0, 1000.0):
        envelope = math.sqrt(2.0 / (math.pi * x))
        asym = envelope * math.cos(x - 3 * math.pi / 4)
        assert abs(bessel_j1(x) - asym) < 1e-2 * envelope


def test_scalar_and_array_shapes():
    assert isinstance(bessel_j0(1.5), float)
    out = bessel_j0(np.ones((3, 4)))
    assert out.shape == (3, 4)
