from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from triplekit.scalars import (
    OMEGA, OMEGA2, Cyc, ScalarParseError, cyc_inv, format_scalar, is_rational, norm, parse_scalar, simplify,
)

rationals = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 12))
cycs = st.builds(Cyc, rationals, rationals)


def test_omega_is_primitive_cube_root():
    assert OMEGA**3 == 1
    assert OMEGA != 1
    assert OMEGA * OMEGA == OMEGA2
    assert OMEGA2 + OMEGA + 1 == 0
    assert OMEGA.conjugate() == OMEGA2


@given(cycs, cycs, cycs)
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == 0


@given(cycs)
def test_inverse_and_norm(x):
    if x == 0:
        with pytest.raises(ZeroDivisionError):
            cyc_inv(x)
        return
    assert x * x.inverse() == 1
    assert norm(x) == (x * x.conjugate()).a
    assert (x * x.conjugate()).b == 0


@given(cycs, cycs)
def test_norm_is_multiplicative(x, y):
    assert norm(x * y) == norm(x) * norm(y)


@given(rationals)
def test_rationals_embed(q):
    c = Cyc(q, 0)
    assert c == q and hash(c) == hash(q)
    assert is_rational(c)
    assert simplify(c) == q and isinstance(simplify(c), Fraction)


@given(cycs)
def test_format_parse_roundtrip(x):
    assert parse_scalar(format_scalar(x)) == x


@pytest.mark.parametrize("text,value", [("3", 3), ("-2/4", Fraction(-1, 2)), (7, 7), (" 5 ", 5)])
def test_parse_rational(text, value):
    assert parse_scalar(text) == value


def test_parse_cyclotomic():
    assert parse_scalar({"a": "1/2", "b": "-1"}) == Cyc(Fraction(1, 2), -1)
    assert isinstance(parse_scalar({"a": "2", "b": "0"}), Fraction)


@pytest.mark.parametrize("bad", ["1/0", "x", "1.5", True, None, 1.5, {"c": "1"}, {"a": "1/0"}])
def test_parse_errors(bad):
    with pytest.raises(ScalarParseError):
        parse_scalar(bad)
