import json
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flagmaj.qseries import (
    BadSet,
    LaurentPolynomial as LP,
    NotDivisible,
    ONE,
    Q,
    ZERO,
    ZeroPolynomial,
    delta_multinomial,
    exact_div,
    format_poly,
    one_plus_q_product,
    parse_poly,
    q_binomial,
    q_factorial,
    q_int,
    q_multinomial,
    shape,
    substitute_power,
)

from .oracles import polys, q, sym_multinomial, sym_qfact, to_lp


def test_canonical_form():
    assert LP([0, 0, 1, 2, 0], -3) == LP([1, 2], -1)
    assert LP([0, 0]).coeffs == () and LP([0, 0]).min_exp == 0
    assert LP([0, 0], 7) == ZERO
    assert ZERO == 0 and ONE == 1


def test_q_int_and_factorial():
    assert q_int(3) == LP([1, 1, 1])
    assert q_int(0) == ZERO
    assert q_factorial(3) == LP([1, 2, 2, 1])
    assert q_factorial(0) == ONE
    for n in range(8):
        assert q_factorial(n) == to_lp(sym_qfact(n))
        assert q_factorial(n).max_exp == max(n * (n - 1) // 2, 0)


def test_q_binomial_examples():
    assert q_binomial(4, 2) == LP([1, 1, 2, 1, 1])
    assert q_binomial(7, 0) == ONE
    assert q_multinomial([1, 1, 1]) == q_factorial(3)
    assert q_multinomial([0, 3]) == ONE
    with pytest.raises(ValueError):
        q_binomial(2, 3)


@pytest.mark.parametrize("parts", [(2, 3), (1, 2, 3), (4, 0, 2), (3, 3, 1, 2)])
def test_multinomial_matches_sympy(parts):
    assert q_multinomial(parts) == to_lp(sym_multinomial(parts))


def test_delta_multinomial():
    assert delta_multinomial(3, {1}) == LP([1, 1, 1])
    assert delta_multinomial(5, set()) == ONE
    assert delta_multinomial(2, {0}) == ONE
    assert delta_multinomial(6, {0, 2, 3}) == q_multinomial([2, 1, 3])
    with pytest.raises(BadSet):
        delta_multinomial(3, {3})


def test_one_plus_q_product():
    assert one_plus_q_product(1, 2) == LP([1, 1, 1, 1])
    assert one_plus_q_product(3, 2) == ONE
    assert one_plus_q_product(0, 0) == LP([2])
    for n in range(1, 7):
        expected = ONE
        for j in range(1, n + 1):
            expected = expected * q_int(2 * j)
        assert one_plus_q_product(1, n) * q_factorial(n) == expected


def test_substitute_power():
    assert substitute_power(LP([1, 1]), 2) == LP([1, 0, 1])
    assert substitute_power(LP.monomial(-1), 3) == LP.monomial(-3)
    assert substitute_power(q_binomial(2, 1), 2) == LP([1, 0, 1])
    with pytest.raises(ValueError):
        substitute_power(Q, 0)


def test_exact_div():
    num = LP.monomial(2) - LP.monomial(-2)
    den = Q - LP.monomial(-1)
    assert exact_div(num, den) == Q + LP.monomial(-1)
    assert exact_div(num, ONE) == num
    with pytest.raises(NotDivisible):
        exact_div(ONE + Q, ONE + LP.monomial(2))
    with pytest.raises(NotDivisible):
        exact_div(LP([1, 1]), LP([2]))
    with pytest.raises(ZeroDivisionError):
        exact_div(ONE, ZERO)


@pytest.mark.parametrize("p, expected", [
    (LP([1, 2, 1]), (True, True)),
    (LP([1, 0, 1], 1), (True, False)),
    (q_binomial(4, 2), (True, True)),
    (LP([1, 2, 2, 3]), (False, True)),
    (LP([2, 1, 2]), (True, False)),
    (LP([5]), (True, True)),
])
def test_shape(p, expected):
    assert shape(p) == expected


def test_shape_of_zero():
    with pytest.raises(ZeroPolynomial):
        shape(ZERO)


def test_text_format():
    p = LP.monomial(-2) + 3 + LP.monomial(5)
    assert format_poly(p) == "q^-2 + 3 + q^5"
    assert format_poly(LP([1, -2], 1)) == "q^1 - 2*q^2"
    assert format_poly(-LP.monomial(0)) == "-1"
    assert format_poly(ZERO) == "0"
    assert parse_poly("q") == Q
    assert parse_poly("2 q^3 - q^-1") == LP.monomial(3, 2) - LP.monomial(-1)


def test_json_format():
    p = q_factorial(20)
    data = json.loads(json.dumps(p.to_json()))
    assert data["min_exp"] == 0 and all(isinstance(c, str) for c in data["coeffs"])
    assert LP.from_json(data) == p
    assert LP.from_json(ZERO.to_json()) == ZERO


def test_evaluation():
    assert (LP.monomial(-1) + 1)(2) == pytest.approx(1.5)
    assert q_factorial(5)(1) == 120


def test_big_coefficients_exact():
    # coefficient sum of the B_15 Poincare polynomial
    p = q_factorial(15) * one_plus_q_product(1, 15)
    assert p(1) == 2 ** 15 * factorial(15)


# properties

@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    for p in (a + b, a * b, a - c):
        assert not p.coeffs or (p.coeffs[0] and p.coeffs[-1])


@given(polys, polys)
def test_product_matches_sympy(a, b):
    def sym(p):
        return sum((c * q ** e for e, c in p.terms()), 0)
    assert a * b == to_lp(sym(a) * sym(b))


@given(polys, polys)
def test_exact_div_inverts_mul(p, d):
    if d:
        assert exact_div(p * d, d) == p


@given(polys)
def test_text_and_json_round_trip(p):
    assert parse_poly(format_poly(p)) == p
    assert LP.from_json(json.loads(json.dumps(p.to_json()))) == p


@settings(max_examples=30)
@given(st.integers(1, 30), st.data())
def test_pascal_recurrence(n, data):
    k = data.draw(st.integers(0, n))
    if 0 < k < n:
        assert q_binomial(n, k) == q_binomial(n - 1, k) + q_binomial(n - 1, k - 1).shift(n - k)


@pytest.mark.parametrize("n", range(16))
def test_evaluation_at_one(n):
    assert q_factorial(n)(1) == factorial(n)
    assert all(q_binomial(n, k)(1) == comb(n, k) for k in range(n + 1))
