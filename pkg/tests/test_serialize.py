import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planepoly.polynomial import Polynomial
from planepoly.serialize import (
    ParseError,
    dumps,
    format_rational,
    loads,
    parse_rational,
    parse_text,
    read_polynomial,
    to_text,
)

from conftest import P3, SEPTIC


def test_parse_examples():
    p3 = parse_text(P3)
    assert p3 == Polynomial(2, {(3, 0): 1, (1, 1): 3, (0, 3): 1})
    assert parse_text("1") == Polynomial.constant(1, 1)
    sept = parse_text(SEPTIC)
    h = Fraction(7, 2)
    assert sept == Polynomial(2, {(7, 0): 1, (0, 7): 1, (5, 1): h, (1, 5): h, (1, 1): h})


def test_parse_indexed_variables_and_signs():
    p = parse_text("-x1^2*x4 + 2/3 x2 - 5", 4)
    assert p.n == 4
    assert p.coefficient((2, 0, 0, 1)) == -1
    assert p.coefficient((0, 1, 0, 0)) == Fraction(2, 3)
    assert p.coefficient((0, 0, 0, 0)) == -5
    assert parse_text("x*x*y") == parse_text("x^2 y")


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as err:
        parse_text("x + * y")
    assert err.value.position == 4
    with pytest.raises(ParseError):
        parse_text("x^")
    with pytest.raises(ParseError):
        parse_text("x + $")
    with pytest.raises(ValueError):
        parse_text("x5", 3)


def test_text_output():
    assert to_text(parse_text(P3)) == "x^3 + y^3 + 3*x*y"
    assert to_text(parse_text("x - 1/2 y")) == "x - 1/2*y"
    assert to_text(Polynomial.zero(2)) == "0"
    assert to_text(parse_text("x1 + x4")) == "x1 + x4"
    assert to_text(parse_text("1/3 x"), float_coefficients=True) == "0.333333*x"


def test_json_document():
    text = dumps(parse_text("3/2 x^2 z + y", 3))
    assert text.endswith("\n")
    obj = json.loads(text)
    assert obj == {"vars": 3, "terms": [{"c": "3/2", "e": [2, 0, 1]}, {"c": "1", "e": [0, 1, 0]}]}
    assert loads(text) == parse_text("3/2 x^2 z + y", 3)


def test_json_rejects_bad_documents():
    with pytest.raises(ValueError):
        loads('{"vars": 2, "terms": [{"c": "1", "e": [1, 0]}, {"c": "2", "e": [1, 0]}]}')
    with pytest.raises(ValueError):
        loads('{"vars": 2, "terms": [{"c": 0.5, "e": [1, 0]}]}')
    with pytest.raises(ValueError):
        loads('{"vars": 2, "terms": [{"c": "1", "e": [1]}]}')
    with pytest.raises(ValueError):
        loads('{"terms": []}')


def test_rationals():
    assert format_rational(Fraction(-6, 4)) == "-3/2"
    assert format_rational(Fraction(4, 2)) == "2"
    assert parse_rational("10/4") == Fraction(5, 2)
    with pytest.raises(ValueError):
        parse_rational("1.5")


def test_read_polynomial_accepts_both_formats():
    p = parse_text(P3)
    assert read_polynomial(dumps(p)) == p
    assert read_polynomial(P3 + "\n") == p


exps = st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
coeffs = st.fractions(min_value=-9, max_value=9, max_denominator=7)


@given(st.dictionaries(exps, coeffs, max_size=6))
@settings(max_examples=100, deadline=None)
def test_round_trips_are_stable(terms):
    p = Polynomial(3, terms)
    once = dumps(p)
    assert dumps(loads(once)) == once
    via_text = parse_text(to_text(p), 3)
    assert via_text == p
    assert dumps(loads(dumps(via_text))) == once
