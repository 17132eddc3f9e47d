from fractions import Fraction

import pytest

from logjet.errors import (ExponentError, ExpressionSyntaxError,
                           ModeMismatchError)
from logjet.parse import parse_poly
from logjet.poly import LOG, ORDINARY, JetPoly, RingDescriptor

R = RingDescriptor(2, 0, ORDINARY)
RJ = RingDescriptor(3, 2, ORDINARY)
RL = RingDescriptor(2, 3, LOG)


def test_cusp():
    f = parse_poly("x1^2 - x2^3", R)
    assert len(f) == 2
    assert f.render() == "-x2^3 + x1^2"


def test_laurent_and_rational():
    f = parse_poly("x1^-1 + 3/2*x2", R)
    assert len(f) == 2
    assert f == (JetPoly.base_var(R, 1, -1)
                 + JetPoly.constant(R, Fraction(3, 2)) * JetPoly.base_var(R, 2))


def test_log_vars():
    f = parse_poly("u[1,2] - u[1,1]^2", RL)
    assert len(f) == 2


def test_ordinary_jet_vars():
    f = parse_poly("x3(2) * x1 - 2*x2(1)", RJ)
    assert len(f) == 2


def test_whitespace_and_parens():
    f = parse_poly(" ( x1 + x2 ) ^ 2 ", R)
    g = parse_poly("x1^2 + 2*x1*x2 + x2^2", R)
    assert f == g


def test_leading_minus():
    assert parse_poly("-x1 + x2", R) == -JetPoly.base_var(R, 1) + \
        JetPoly.base_var(R, 2)


def test_syntax_error_position():
    with pytest.raises(ExpressionSyntaxError) as err:
        parse_poly("x1 + * x2", R)
    assert err.value.position == 5


def test_trailing_garbage():
    with pytest.raises(ExpressionSyntaxError):
        parse_poly("x1 x2", R)


def test_double_exponent_rejected():
    with pytest.raises(ExpressionSyntaxError):
        parse_poly("x1^2^3", R)


def test_negative_jet_exponent():
    with pytest.raises(ExponentError):
        parse_poly("u[1,1]^-1", RL)
    with pytest.raises(ExponentError):
        parse_poly("x3(2)^-2", RJ)


def test_mode_mismatch():
    with pytest.raises(ModeMismatchError):
        parse_poly("u[1,1]", RJ)
    with pytest.raises(ModeMismatchError):
        parse_poly("x1(1)", RL)


def test_out_of_range_indices():
    with pytest.raises(ExpressionSyntaxError):
        parse_poly("x5", R)
    with pytest.raises(ExpressionSyntaxError):
        parse_poly("u[1,9]", RL)


def test_zero_denominator():
    with pytest.raises(ExpressionSyntaxError):
        parse_poly("1/0", R)


def test_round_trip_canonical():
    texts = [
        "x1^2 - x2^3",
        "x1^-1 + 3/2*x2",
        "-x1 + 1",
        "2*x1*x2 - 1/2",
    ]
    for text in texts:
        f = parse_poly(text, R)
        assert parse_poly(f.render(), R) == f


def test_round_trip_jet_rings():
    f = parse_poly("x1*x3(2)^2 - x2(1)", RJ)
    assert parse_poly(f.render(), RJ) == f
    g = parse_poly("x1*u[1,2] - u[2,1]*u[1,1]", RL)
    assert parse_poly(g.render(), RL) == g
