from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import polys
from lrhopf.expr import ParseError, parse_poly
from lrhopf.poly import Derivation, Poly, VariableCountMismatch, poly_derive, poly_product, poly_sum, render_poly


def P(text, k=2):
    return parse_poly(text, k)


def test_sum_examples():
    assert poly_sum(P("x1"), P("-x1")) == Poly.zero(2)
    assert poly_sum(P("x1^2+1"), P("x1")) == P("x1^2 + x1 + 1")
    assert poly_sum(P("1/2*x1"), P("1/3*x1")) == Poly(2, {(1, 0): Fraction(5, 6)})


def test_product_examples():
    assert poly_product(P("x1+1"), P("x1-1")) == P("x1^2 - 1")
    p = P("3*x1*x2 - 7")
    assert poly_product(p, Poly.one(2)) == p
    assert poly_product(P("x1+x2"), P("x1+x2")) == P("x1^2 + 2*x1*x2 + x2^2")


def test_derive_examples():
    d = Derivation.partial(1, 0)
    assert poly_derive(d, P("x1^3", 1)) == P("3*x1^2", 1)
    euler = d.scale(P("x1", 1))
    assert poly_derive(euler, P("x1", 1)) == P("x1", 1)
    assert poly_derive(euler, P("7/3", 1)) == Poly.zero(1)


def test_parse_and_render():
    assert P("3*x1^2 - 1/2", 1).terms == {(2,): 3, (0,): Fraction(-1, 2)}
    assert P("x1*x1") == P("x1^2")
    assert render_poly(P("0*x1")) == "0"
    assert render_poly(P("x1^2*x2 - 1/2*x2 + 3")) == "x1^2*x2 - 1/2*x2 + 3"


def test_variable_count_mismatch():
    with pytest.raises(VariableCountMismatch):
        Poly.one(1) + Poly.one(2)


@pytest.mark.parametrize("text", ["x3", "x1 +", "x1^-1", "1/x1", "(x1", "X1", "x1/0"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_poly(text, 2)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_poly("x1 + * 2", 1)
    assert info.value.position == 5


@given(polys(2), polys(2), polys(2))
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == Poly.zero(2)


@given(polys(2), polys(2), st.integers(0, 1))
def test_leibniz(p, q, j):
    assert (p * q).diff(j) == p.diff(j) * q + p * q.diff(j)


@given(polys(2))
def test_render_parse_roundtrip(p):
    assert parse_poly(render_poly(p), 2) == p


@given(polys(2), polys(2))
def test_divexact(p, q):
    if q:
        assert (p * q).divexact(q) == p


@given(polys(1), polys(1), polys(1))
def test_derivation_bracket_is_derivation(a, b, p):
    D = Derivation.partial(1, 0).scale(a)
    E = Derivation.partial(1, 0).scale(b)
    assert D.bracket(E)(p) == D(E(p)) - E(D(p))
