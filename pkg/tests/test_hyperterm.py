"""Parsing, evaluation, and shift structure of proper hypergeometric terms."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from telesum.hyperterm import (
    DegenerateSampleError,
    ParseError,
    PoleError,
    UnboundParameterError,
    binomial_value,
    eval_term,
    parse_linear_form,
    parse_term,
    ratio_rational,
    shift_quotient,
    term_ratio_is_one,
    term_to_string,
)
from telesum.polynomials import eval_qnk


# -- the extended binomial convention ------------------------------------


def test_binomial_ordinary():
    assert binomial_value(5, 2) == 10
    assert binomial_value(0, 0) == 1
    assert binomial_value(4, 4) == 1


def test_binomial_out_of_range_zero():
    assert binomial_value(3, 5) == 0
    assert binomial_value(3, -1) == 0
    assert binomial_value(0, 2) == 0


def test_binomial_negative_top():
    # binom(-a, b) = (-1)^b binom(a+b-1, b)
    assert binomial_value(-1, 0) == 1
    assert binomial_value(-1, 1) == -1
    assert binomial_value(-1, 2) == 1
    assert binomial_value(-3, 2) == 6
    assert binomial_value(-2, 3) == -4


# -- parsing and evaluation ----------------------------------------------


def test_parse_basic_binomial():
    t = parse_term("binom(n,k)")
    assert eval_term(t, 5, 2) == 10
    assert eval_term(t, 5, 7) == 0
    assert eval_term(t, 5, -1) == 0


def test_parse_product_juxtaposition():
    t = parse_term("binom(n,k)binom(n,k)")
    u = parse_term("binom(n,k)^2")
    assert t == u
    assert eval_term(t, 4, 2) == 36


def test_parse_single_slash_splits_products():
    # everything after the one slash is the denominator product
    t = parse_term("binom(2k,k)*binom(2n-2k+2,n-k+1)/(k+1)")
    assert eval_term(t, 3, 1) == Fraction(2 * 20, 2)
    u = parse_term("fact(n)/fact(k)*fact(n-k)")
    assert eval_term(u, 5, 2) == Fraction(120, 2 * 6)


def test_parse_integer_power_of_base():
    t = parse_term("2^k*binom(n,k)")
    assert eval_term(t, 3, 2) == 4 * 3
    u = parse_term("2^(n-k)")
    assert eval_term(u, 5, 2) == 8


def test_parse_negative_exponent_power():
    t = parse_term("binom(n,k)^2*binom(2k,n)")
    assert eval_term(t, 4, 3) == 16 * binomial_value(6, 4)


def test_parse_polynomial_prefactor():
    t = parse_term("(2k-2n-3)(k+1)binom(n,k)")
    assert eval_term(t, 2, 1) == (2 - 4 - 3) * 2 * 2


def test_parse_rational_prefactor_pole():
    t = parse_term("binom(n,k)/(n-2)")
    assert eval_term(t, 3, 1) == 3
    with pytest.raises(PoleError):
        eval_term(t, 2, 1)


def test_negative_factorial_kills_term():
    t = parse_term("fact(k-1)*binom(n,k)")
    assert eval_term(t, 3, 0) == 0  # fact(-1) convention
    assert eval_term(t, 3, 2) == 3


def test_fact_values():
    t = parse_term("fact(k)")
    assert [eval_term(t, 0, k) for k in range(5)] == [1, 1, 2, 6, 24]


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_term("binom(n,k")
    assert info.value.pos == 9
    assert "expected" in str(info.value)


def test_parse_error_trailing_garbage():
    with pytest.raises(ParseError):
        parse_term("binom(n,k))")


def test_parse_error_double_slash():
    with pytest.raises(ParseError):
        parse_term("fact(n)/fact(k)/fact(n-k)")


def test_unbound_parameter_in_prefactor():
    with pytest.raises(UnboundParameterError):
        parse_term("(r+1)*binom(n,k)")
    # the same text parses fine once the parameter is bound
    t = parse_term("(r+1)*binom(n,k)", {"r": 3})
    assert eval_term(t, 2, 1) == 8


def test_symbolic_parameter_in_binomial_argument():
    t = parse_term("binom(n+r,k)")
    with pytest.raises(UnboundParameterError):
        eval_term(t, 2, 1)
    assert eval_term(t.bind({"r": 2}), 2, 1) == 4


def test_bind_rejects_negative():
    t = parse_term("binom(n+r,k)")
    with pytest.raises(ValueError):
        t.bind({"r": -1})


def test_canonical_merge_of_factors():
    t = parse_term("2^k*2^k")
    u = parse_term("4^k")
    assert eval_term(t, 0, 3) == eval_term(u, 0, 3) == 64


def test_subst_k():
    t = parse_term("binom(n,k)")
    fixed = t.subst_k(2)
    assert eval_term(fixed, 5, 0) == 10
    assert eval_term(fixed, 5, 99) == 10  # k no longer appears


# -- shift quotients -----------------------------------------------------


def test_shift_quotient_binomial_k():
    t = parse_term("binom(n,k)")
    r = shift_quotient(t, "k")
    # binom(n,k+1)/binom(n,k) = (n-k)/(k+1)
    assert eval_qnk(r, 5, 1) == Fraction(4, 2)
    assert eval_qnk(r, 7, 3) == Fraction(4, 4)


def test_shift_quotient_binomial_n():
    t = parse_term("binom(n,k)")
    r = shift_quotient(t, "n")
    # binom(n+1,k)/binom(n,k) = (n+1)/(n+1-k)
    assert eval_qnk(r, 4, 2) == Fraction(5, 3)


def test_shift_quotient_matches_values():
    for text in ("binom(2n,k)*binom(2n+1,k)", "binom(n,k)^3", "2^k/fact(k)"):
        t = parse_term(text)
        rk = shift_quotient(t, "k")
        rn = shift_quotient(t, "n")
        for n in range(3, 6):
            for k in range(0, 3):
                fv = eval_term(t, n, k)
                if fv == 0:
                    continue
                assert eval_term(t, n, k + 1) == fv * eval_qnk(rk, n, k)
                assert eval_term(t, n + 1, k) == fv * eval_qnk(rn, n, k)


def test_shift_quotient_with_symbolic_param_needs_binding():
    t = parse_term("binom(n+r,k)")
    with pytest.raises(UnboundParameterError):
        shift_quotient(t, "k")
    r = shift_quotient(t, "k", {"r": 1})
    assert eval_qnk(r, 2, 0) == Fraction(3, 1)


# -- structural ratio and sampling equivalence ---------------------------


def test_ratio_rational_cancels_factors():
    f = parse_term("binom(n,k)")
    g = parse_term("(k+1)*binom(n,k)/(n+1)")
    r = ratio_rational(g, f)
    assert eval_qnk(r, 4, 2) == Fraction(3, 5)


def test_ratio_rational_rejects_mismatched_structure():
    f = parse_term("binom(n,k)")
    g = parse_term("binom(2n,k)")
    with pytest.raises(ValueError):
        ratio_rational(g, f)


def test_term_ratio_is_one_positive():
    # binom(2n+2,n) rewritten through the adjacent column
    t = parse_term("binom(2n+2,n)")
    v = parse_term("(n+1)*binom(2n+2,n+1)/(n+2)")
    lhs = [eval_term(t, n, 0) for n in range(6)]
    rhs = [eval_term(v, n, 0) for n in range(6)]
    assert lhs == rhs
    assert term_ratio_is_one(t, v)


def test_term_ratio_is_one_negative():
    t = parse_term("binom(n,k)")
    u = parse_term("2*binom(n,k)")
    assert not term_ratio_is_one(t, u)


def test_term_ratio_is_one_shift_mismatch():
    t = parse_term("binom(n,k)")
    u = parse_term("binom(n,k)*2^k")
    assert not term_ratio_is_one(t, u)


# -- printing ------------------------------------------------------------


def test_print_parse_round_trip():
    texts = [
        "binom(n,k)",
        "binom(2k,k)*binom(2n-2k+2,n-k+1)/(k+1)",
        "2*binom(2n,k)*binom(2n+1,k)",
        "binom(n,k)^3",
        "2^k*fact(k)/fact(n)",
        "(2k-2n-3)(k+1)binom(2k,k)binom(2n-2k+2,n-k+1)fact(k)/fact(k+1)*(n+2)",
    ]
    for text in texts:
        t = parse_term(text)
        printed = term_to_string(t)
        assert parse_term(printed) == t


def test_term_to_string_simple():
    # structured factors print first, the rational prefactor last
    assert term_to_string(parse_term("binom(n,k)")) == "binom(n,k)"
    assert term_to_string(parse_term("2*binom(n,k)")) == "binom(n,k)*2"
    assert term_to_string(parse_term("binom(n,k)/(n+1)")) == "binom(n,k)/(n+1)"


# -- linear forms --------------------------------------------------------


def test_parse_linear_form():
    lf = parse_linear_form("2n+1")
    assert lf.evaluate(3, 0) == 7
    lf2 = parse_linear_form("n-1")
    assert lf2.evaluate(0, 0) == -1
    lf3 = parse_linear_form("s-1")
    assert lf3.bind({"s": 4}).evaluate(0, 0) == 3


def test_parse_linear_form_rejects_quadratic():
    with pytest.raises(ParseError):
        parse_linear_form("n*n")


def test_linear_form_unbound_evaluate():
    lf = parse_linear_form("r+1")
    with pytest.raises(UnboundParameterError):
        lf.evaluate(0, 0)


# -- property: parse/print and eval/shift coherence ----------------------


_term_texts = st.sampled_from(
    [
        "binom(n,k)",
        "binom(n,k)^2",
        "binom(2n,k)",
        "binom(n+2,k+1)",
        "2^k*binom(n,k)",
        "3^(n-k)",
        "fact(k)/fact(n)",
        "binom(2k,k)/(k+1)",
        "(k+2)*binom(n,k)",
        "binom(n,k)*binom(n,k+1)",
    ]
)


@settings(max_examples=30, deadline=None)
@given(_term_texts)
def test_round_trip_property(text):
    t = parse_term(text)
    assert parse_term(term_to_string(t)) == t


@settings(max_examples=20, deadline=None)
@given(_term_texts, st.integers(min_value=3, max_value=7), st.integers(min_value=0, max_value=3))
def test_k_shift_property(text, n, k):
    t = parse_term(text)
    fv = eval_term(t, n, k)
    if fv == 0:
        return
    r = shift_quotient(t, "k")
    assert eval_term(t, n, k + 1) == fv * eval_qnk(r, n, k)
