"""Truncated power series arithmetic and the bundled generating functions."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from telesum.hyperterm import binomial_value
from telesum.series import (
    PowerSeries,
    ballot_gf,
    catalan_gf,
    central_binomial_gf,
    check_convolution_11897,
    check_shifted_central_identity,
    known_gf,
    one_series,
    shifted_central_gf,
    x_series,
)


def _series(*vals: int) -> PowerSeries:
    return PowerSeries(tuple(Fraction(v) for v in vals))


# -- arithmetic ----------------------------------------------------------


def test_order_and_coeff():
    s = _series(1, 2, 3)
    assert s.order == 2
    assert s.coeff(1) == 2
    with pytest.raises(IndexError):
        s.coeff(3)


def test_add_min_order():
    a = _series(1, 1, 1, 1)
    b = _series(2, 2)
    c = a + b
    assert c.order == 1
    assert c.coeff(0) == 3 and c.coeff(1) == 3


def test_mul_is_convolution():
    ones = _series(1, 1, 1, 1)
    sq = ones * ones
    assert [sq.coeff(i) for i in range(4)] == [1, 2, 3, 4]


def test_mul_by_one_identity():
    s = _series(3, -1, 5)
    assert s * one_series(2) == s


def test_scalar_ops():
    s = _series(1, 2)
    assert (2 * s).coeff(1) == 4
    assert (s - s).coeff(0) == 0


def test_inverse_of_one_minus_x():
    geom = (one_series(6) - x_series(6)).inverse()
    assert [geom.coeff(i) for i in range(7)] == [1] * 7


def test_inverse_defining_identity():
    s = _series(1, 3, -2, 5, 7)
    prod = s * s.inverse()
    assert prod == one_series(4)


def test_inverse_requires_unit_constant():
    with pytest.raises(ZeroDivisionError):
        _series(0, 1).inverse()


def test_inverse_involution():
    s = _series(2, -1, 4, 3)
    assert s.inverse().inverse() == s


def test_sqrt_squares_back():
    base = one_series(8) - 4 * x_series(8)
    root = base.sqrt()
    assert root * root == base
    assert [root.coeff(i) for i in range(5)] == [1, -2, -2, -4, -10]


def test_sqrt_requires_constant_one():
    with pytest.raises(ValueError):
        _series(4, 1).sqrt()


def test_pow_and_negative_pow():
    s = _series(1, 1, 0, 0, 0)
    assert (s**3).coeff(1) == 3
    assert (s**-1) == s.inverse()
    assert (s**0) == one_series(4)


def test_truncate_and_shift_down():
    s = _series(0, 5, 7, 9)
    assert s.truncate(1).order == 1
    t = s.shift_down(1)
    assert [t.coeff(i) for i in range(3)] == [5, 7, 9]


def test_shift_down_requires_zero_prefix():
    with pytest.raises(ValueError):
        _series(1, 2).shift_down(1)


# -- bundled generating functions ---------------------------------------


def test_catalan_coefficients():
    gf = catalan_gf(10)
    catalans = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796]
    assert [gf.coeff(i) for i in range(11)] == catalans
    # closed form binom(2j,j)/(j+1)
    for j in range(11):
        assert gf.coeff(j) == Fraction(binomial_value(2 * j, j), j + 1)


def test_central_binomial_coefficients():
    gf = central_binomial_gf(10)
    for j in range(11):
        assert gf.coeff(j) == binomial_value(2 * j, j)


def test_catalan_functional_equation():
    # C = 1 + x C^2 to the truncation order
    order = 16
    c = catalan_gf(order)
    rhs = one_series(order) + (x_series(order) * c * c).truncate(order)
    assert c.truncate(order - 1) == rhs.truncate(order - 1)


def test_ballot_family_coefficients():
    # coefficient n of ballot(k) is binom(2n+k, n)
    for k in range(6):
        gf = ballot_gf(k, 20)
        for n in range(21):
            assert gf.coeff(n) == binomial_value(2 * n + k, n)


def test_ballot_zero_is_central():
    assert ballot_gf(0, 12) == central_binomial_gf(12)


def test_shifted_central_coefficients():
    gf = shifted_central_gf(12)
    for j in range(13):
        assert gf.coeff(j) == binomial_value(2 * j + 2, j + 1)


def test_shifted_central_identity_check():
    assert check_shifted_central_identity(64)
    assert check_shifted_central_identity(10)


def test_convolution_identity_check():
    assert check_convolution_11897(64)
    assert check_convolution_11897(50)


def test_convolution_identity_small_values():
    # coefficient n of catalan * shifted-central equals 2*binom(2n+2, n)
    order = 12
    prod = catalan_gf(order) * shifted_central_gf(order)
    for n in range(order + 1):
        assert prod.coeff(n) == 2 * binomial_value(2 * n + 2, n)


def test_known_gf_registry():
    assert known_gf("catalan", 5) == catalan_gf(5)
    assert known_gf("central", 5) == central_binomial_gf(5)
    assert known_gf("shifted-central", 5) == shifted_central_gf(5)
    assert known_gf("ballot", 5, 2) == ballot_gf(2, 5)
    with pytest.raises(KeyError):
        known_gf("unknown", 5)


# -- ring axioms at order 16 --------------------------------------------


fracs = st.fractions(min_value=-9, max_value=9, max_denominator=8)
series16 = st.lists(fracs, min_size=17, max_size=17).map(
    lambda vs: PowerSeries(tuple(vs))
)


@settings(max_examples=40, deadline=None)
@given(series16, series16, series16)
def test_series_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@settings(max_examples=40, deadline=None)
@given(series16, series16)
def test_mul_matches_double_loop(a, b):
    prod = a * b
    for n in range(prod.order + 1):
        direct = sum(a.coeff(s) * b.coeff(n - s) for s in range(n + 1))
        assert prod.coeff(n) == direct
