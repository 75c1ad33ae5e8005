from fractions import Fraction
from math import comb, factorial

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shiftsampling import (Generator, InvalidOrderError, ProductGenerator, bspline_eval,
                           gram_sequence, riesz_condition, zak_kernel, zak_kernel_2d,
                           zak_series)


def truncated_power(m, t):
    """Exact cardinal B-spline value from the truncated-power expansion."""
    t = Fraction(t)
    total = Fraction(0)
    for k in range(m + 1):
        u = t - k
        if u >= 0:
            total += (-1) ** k * comb(m, k) * u ** (m - 1)
    return total / factorial(m - 1)


@pytest.mark.parametrize("m,t,expected", [(1, 0.5, 1.0), (4, 2.0, 2 / 3), (4, 0.5, 1 / 48)])
def test_bspline_examples(m, t, expected):
    assert bspline_eval(m, t) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("m", range(1, 8))
def test_bspline_against_truncated_powers(m):
    pts = [Fraction(k, 8) for k in range(-8, 8 * m + 9)]
    got = bspline_eval(m, np.array([float(p) for p in pts]))
    want = np.array([float(truncated_power(m, p)) for p in pts])
    np.testing.assert_allclose(got, want, atol=1e-13)


def test_bspline_support_and_half_open_box():
    assert bspline_eval(1, 0.0) == 1.0
    assert bspline_eval(1, 1.0) == 0.0
    for m in (2, 3, 4, 5):
        assert bspline_eval(m, -1e-9) == 0.0
        assert bspline_eval(m, m + 1e-9) == 0.0


@pytest.mark.parametrize("m", [0, -1, 2.5])
def test_bspline_invalid_order(m):
    with pytest.raises(InvalidOrderError):
        bspline_eval(m, 0.5)
    with pytest.raises(InvalidOrderError):
        Generator.bspline(m)


@pytest.mark.parametrize("m", range(2, 7))
def test_bspline_continuity(m):
    t = np.linspace(-1, m + 1, 20001)
    jumps = np.abs(np.diff(bspline_eval(m, t)))
    assert jumps.max() < 1e-3


@pytest.mark.parametrize("m", range(1, 7))
def test_partition_of_unity(m):
    t = np.linspace(-3, 3, 1201)
    n = np.arange(-10, 11)
    total = bspline_eval(m, t[:, None] - n[None, :]).sum(axis=1)
    assert np.abs(total - 1).max() <= 1e-12


def test_generator_dict_roundtrip():
    for g in (Generator.bspline(4), Generator.sinc(32),
              Generator.tabulated([0.0, 1.0, 0.0], -1.0, 1.0)):
        h = Generator.from_dict(g.to_dict())
        t = np.linspace(-3, 5, 37)
        np.testing.assert_array_equal(g(t), h(t))
    assert Generator.from_dict("bspline:3").order == 3


def test_tabulated_generator_is_linear_interpolation():
    g = Generator.tabulated([0.0, 1.0, 0.0], -1.0, 1.0)
    assert g(0.5) == pytest.approx(0.5)
    assert g(-2.0) == 0.0


def test_cubic_zak_kernel_example():
    K = zak_kernel(Generator.bspline(4), 0.0, 256)
    x = K.x
    # samples N_4(1) = N_4(3) = 1/6, N_4(2) = 2/3 at n = -1, -2, -3
    expected = (np.exp(2j * np.pi * x) / 6 + 2 * np.exp(4j * np.pi * x) / 3
                + np.exp(6j * np.pi * x) / 6)
    np.testing.assert_allclose(K.values, expected, atol=1e-14)
    assert K.lower == pytest.approx(1 / 3, abs=1e-12)
    assert K.argmin == pytest.approx(0.5)
    assert K.upper == pytest.approx(1.0, abs=1e-12)


def test_linear_zak_kernel_is_unimodular():
    K = zak_kernel(Generator.bspline(2), 0.0, 64)
    np.testing.assert_allclose(np.abs(K.values), 1.0, atol=1e-14)


def test_zak_kernel_preconditions():
    with pytest.raises(ValueError):
        zak_kernel(Generator.bspline(4), 1.0, 64)
    with pytest.raises(ValueError):
        zak_kernel(Generator.bspline(4), 0.0, 1)


@settings(max_examples=40, deadline=None)
@given(a=st.floats(0, 0.999), m=st.integers(-3, 3), order=st.integers(2, 6))
def test_zak_shifting(a, m, order):
    g = Generator.bspline(order)
    x = np.arange(128) / 128
    direct = zak_series(g, a + m, x)
    modulated = np.exp(-2j * np.pi * m * x) * zak_series(g, a, x)
    assert np.abs(direct - modulated).max() <= 1e-12


@settings(max_examples=25, deadline=None)
@given(a=st.floats(0, 0.999), order=st.integers(2, 6))
def test_lower_bound_monotone_under_refinement(a, order):
    g = Generator.bspline(order)
    lows = [zak_kernel(g, a, G).lower for G in (16, 32, 64, 128, 256)]
    assert all(b <= a_ + 1e-15 for a_, b in zip(lows, lows[1:]))


def test_riesz_cases():
    cubic = riesz_condition(zak_kernel(Generator.bspline(4), 0.0, 256))
    assert cubic.valid and cubic.lower == pytest.approx(1 / 3, abs=1e-6)
    quad0 = riesz_condition(zak_kernel(Generator.bspline(3), 0.0, 256))
    assert not quad0.valid
    assert quad0.witness == pytest.approx(0.5)
    assert riesz_condition(zak_kernel(Generator.bspline(3), 0.5, 256)).valid


def test_quadratic_lower_bound_vanishes_with_refinement():
    lows = [zak_kernel(Generator.bspline(3), 0.0, G).lower for G in (16, 256, 4096)]
    assert max(lows) < 1e-12


def test_sinc_kernel_near_unimodular():
    # integer samples of sinc are delta_n, so K_0 = 1
    K = zak_kernel(Generator.sinc(16), 0.0, 64)
    np.testing.assert_allclose(K.values, 1.0, atol=1e-12)


def test_gram_sequence_cubic():
    k, g = gram_sequence(Generator.bspline(4))
    table = dict(zip(k.tolist(), g))
    assert table[0] == pytest.approx(bspline_eval(8, 4.0))
    assert sum(g) == pytest.approx(1.0)


def test_zak_kernel_2d_separable_product():
    P = ProductGenerator(Generator.bspline(4), Generator.bspline(3))
    K2 = zak_kernel_2d(P, 0.0, 0.5, 32)
    kx = zak_kernel(Generator.bspline(4), 0.0, 32).values
    ky = zak_kernel(Generator.bspline(3), 0.5, 32).values
    np.testing.assert_allclose(K2.values, np.multiply.outer(kx, ky), atol=1e-14)
    assert K2.lower == pytest.approx(1 / 3 * 0.5, abs=1e-12)
