"""Machine encodings: decimal-string coefficient lists and human text."""

from __future__ import annotations

from fractions import Fraction

import pytest

from telesum.polynomials import POLY_K, QN, k_poly, n_poly, qnk
from telesum.serialize import (
    bivariate_string,
    kpoly_to_lists,
    list_to_npoly,
    lists_to_kpoly,
    npoly_to_list,
    ratfun_to_record,
    ratfun_to_text,
    record_to_ratfun,
)


def test_npoly_round_trip():
    p = n_poly(-2, 0, 7)
    assert npoly_to_list(p) == ["-2", "0", "7"]
    assert list_to_npoly(npoly_to_list(p)) == p


def test_npoly_zero():
    assert npoly_to_list(n_poly()) == ["0"]


def test_npoly_rejects_fractions():
    with pytest.raises(ValueError):
        npoly_to_list(n_poly(Fraction(1, 2)))


def test_kpoly_nested_lists():
    from telesum.polynomials import clear_qnk_pair

    num, _ = clear_qnk_pair(qnk(k_poly(n_poly(1, 2), n_poly(3))))  # (2n+1) + 3k
    assert kpoly_to_lists(num) == [["1", "2"], ["3"]]


def test_kpoly_round_trip():
    p = k_poly(n_poly(1, 2), n_poly(3))
    lists = [["1", "2"], ["3"]]
    assert lists_to_kpoly(lists) == p
    back = lists_to_kpoly(lists)
    assert back.coeff(0) == QN.coerce(n_poly(1, 2))


def test_ratfun_record_round_trip():
    f = qnk(k_poly(n_poly(0, 1), 2), k_poly(n_poly(1), 1))  # (n+2k)/(1+k)
    rec = ratfun_to_record(f)
    assert rec == {"num": [["0", "1"], ["2"]], "den": [["1"], ["1"]]}
    assert record_to_ratfun(rec) == f


def test_ratfun_record_clears_fractions():
    half = QN.coerce(Fraction(1, 2))
    f = qnk(POLY_K.constant(half), POLY_K.one())  # 1/2
    rec = ratfun_to_record(f)
    assert rec == {"num": [["1"]], "den": [["2"]]}
    assert record_to_ratfun(rec) == f


def test_bivariate_string_samples():
    from telesum.polynomials import clear_qnk_pair

    p, _ = clear_qnk_pair(qnk(k_poly(n_poly(1), 1)))
    assert bivariate_string(p) == "k+1"
    p2, _ = clear_qnk_pair(qnk(k_poly(n_poly(0, -4), 1)))
    assert bivariate_string(p2) == "k-4*n"
    p3, _ = clear_qnk_pair(qnk(k_poly(n_poly(0), n_poly(1, 2))))
    assert bivariate_string(p3) == "(2*n+1)*k"


def test_bivariate_string_powers():
    from telesum.polynomials import clear_qnk_pair

    p, _ = clear_qnk_pair(qnk(k_poly(n_poly(0, 0, 3), n_poly(0), n_poly(-1))))
    assert bivariate_string(p) == "-k^2+3*n^2"


def test_ratfun_to_text():
    f = qnk(k_poly(n_poly(0, 1)), k_poly(n_poly(1), 1))  # n/(k+1)
    assert ratfun_to_text(f) == "(n) / (k+1)"
    g = qnk(k_poly(n_poly(2)), POLY_K.one())
    assert ratfun_to_text(g) == "2"
