import pytest

from lrhopf.enveloping import Envelope
from lrhopf.fixtures import envelope, load_fixture
from lrhopf.identities import (
    galois_sides,
    plus_leg_sides,
    base_sides,
    minus_leg_sides,
    antimultiplicative_sides,
    contraction_sides,
    beta_failures,
    double_translate_sides,
    schauenburg_failures,
)
from lrhopf.poly import Poly


@pytest.mark.parametrize("name", ["W1", "W2", "AFF", "SL2", "NC"])
def test_all_identities_hold(name):
    env = envelope(name)
    level = 5 if env.rank <= 2 else 3
    assert schauenburg_failures(env, level) == []
    assert beta_failures(env, 3) == []


def test_individual_sides_w1(W1):
    u = W1.parse("X1^3*x1")
    for sides in (galois_sides, plus_leg_sides, minus_leg_sides, contraction_sides, double_translate_sides):
        lhs, rhs = sides(u)
        assert lhs == rhs
    lhs, rhs = antimultiplicative_sides(W1.parse("X1*x1"), W1.parse("X1^2"))
    assert lhs == rhs
    lhs, rhs = base_sides(Poly.var(1, 0), W1)
    assert lhs == rhs


def test_contraction_is_counit(AFF):
    u = AFF.parse("X2*X1*x1 + x1^2")
    lhs, rhs = contraction_sides(u)
    assert lhs == rhs == AFF.parse("x1^2")


def test_wrong_translation_sign_breaks_identities():
    env = Envelope(load_fixture("W1"), translation_sign=1)
    names = {f.identity for f in schauenburg_failures(env, 2)}
    assert {"galois", "contraction"} <= names
    lhs, rhs = galois_sides(env.gen(0))
    assert lhs != rhs
