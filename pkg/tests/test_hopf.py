import random

import pytest

from conftest import random_env_element
from lrhopf import multiindex as mi
from lrhopf.enveloping import Envelope
from lrhopf.fixtures import envelope, load_fixture
from lrhopf.functionals import PrecisionExceeded, TruncatedFunctional, epsilon, truncate, vartheta, zero_functional
from lrhopf.hopf import (
    antipode_lemma_sides,
    antipode_limit_sides,
    antipode_pointwise_check,
    antipode_star,
    counit_star,
    delta_star,
    delta_star_product_sides,
    fuv_check,
    hopf_axiom_suite,
    lambda_product,
    random_poly,
    report,
    s_star,
    t_star,
)
from lrhopf.poly import Poly

ONE = Poly.one(1)
X = Poly.var(1, 0)


def c(v):
    return Poly.const(1, v)


def rand_f(rng, env, n):
    return TruncatedFunctional(env, n, {a: random_poly(rng, env.nvars, 2) for a in mi.up_to(env.rank, n)})


def test_counit_star(W1):
    assert counit_star(truncate(epsilon(W1), 2)) == ONE
    assert counit_star(truncate(vartheta(W1, X + 1, X * X), 2)) == (X + 1) * X * X
    assert counit_star(zero_functional(W1, 3)) == Poly.zero(1)


def test_delta_star_examples(W1, AFF):
    e = truncate(epsilon(AFF), 4)
    t = delta_star(e, 2, 2)
    for a in mi.up_to(2, 2):
        for b in mi.up_to(2, 2):
            x, y = AFF.monomial(a), AFF.monomial(b)
            assert t.evaluate(x, y) == AFF.counit(x * y)
    h = TruncatedFunctional(W1, 2, {(1,): c(-1)})
    assert delta_star(h, 1, 1).rows() == [[Poly.zero(1), c(-1)], [c(-1), Poly.zero(1)]]
    f = truncate(vartheta(W1, X, X + 2), 3)
    row = delta_star(f, 0, 3)
    assert [row.entry((0,), a) for a in mi.up_to(1, 3)] == [f.value(a) for a in mi.up_to(1, 3)]
    with pytest.raises(PrecisionExceeded):
        delta_star(h, 2, 1)


def test_fuv_examples(W1):
    e = truncate(epsilon(W1), 4)
    assert fuv_check(e, W1.parse("X1^2*x1"), W1.parse("X1 + x1"))
    f = truncate(vartheta(W1, ONE, X), 2)
    assert fuv_check(f, W1.gen(0), W1.gen(0))
    assert f(W1.parse("X1^2")) == Poly.zero(1)


@pytest.mark.parametrize("name", ["W1", "W2", "AFF", "SL2", "NC"])
def test_fuv_random(name):
    env = envelope(name)
    rng = random.Random(5)
    for _ in range(40):
        f = rand_f(rng, env, 4)
        assert fuv_check(f, random_env_element(rng, env, 2), random_env_element(rng, env, 2))


def test_antipode_examples(W1):
    assert antipode_star(truncate(epsilon(W1), 3)) == truncate(epsilon(W1), 3)
    f = truncate(vartheta(W1, ONE, X), 2)
    assert antipode_star(f) == TruncatedFunctional(W1, 2, {(0,): X})
    assert antipode_star(f) == truncate(vartheta(W1, X, ONE), 2)


@pytest.mark.parametrize("name", ["W1", "W2", "AFF", "SL2", "NC"])
def test_antipode_involution_and_swap(name):
    env = envelope(name)
    rng = random.Random(2)
    for _ in range(5):
        f = rand_f(rng, env, 3)
        assert antipode_star(antipode_star(f)) == f
    k = env.nvars
    for _ in range(3):
        a = random_poly(rng, k, 2)
        assert antipode_star(truncate(s_star(env, a), 3)) == truncate(t_star(env, a), 3)


def test_antipode_swaps_vartheta_legs(AFF):
    # S*ϑ(a'⊗a) = ϑ(a⊗a')
    rng = random.Random(9)
    for _ in range(5):
        a1, a = random_poly(rng, 1, 2), random_poly(rng, 1, 2)
        assert antipode_star(truncate(vartheta(AFF, a1, a), 3)) == truncate(vartheta(AFF, a, a1), 3)


def test_pointwise_examples(W1):
    h = TruncatedFunctional(W1, 4, {(1,): c(-1)})
    e = truncate(epsilon(W1), 4)
    u = W1.parse("X1^2*x1 + X1")
    assert antipode_pointwise_check(h, e, u)
    assert antipode_pointwise_check(h, h, W1.parse("X1^2"))
    sides = antipode_lemma_sides(h, h, W1.parse("X1^2"))
    assert set(sides) == {"i", "ii", "iii"}


@pytest.mark.parametrize("name", ["W1", "W2", "AFF"])
def test_pointwise_random(name):
    env = envelope(name)
    rng = random.Random(13)
    for _ in range(200):
        f, h = rand_f(rng, env, 3), rand_f(rng, env, 3)
        assert antipode_pointwise_check(f, h, random_env_element(rng, env, 3))


def test_limit_identity(W1, AFF):
    rng = random.Random(4)
    for env in (W1, AFF):
        for _ in range(3):
            lhs, rhs = antipode_limit_sides(rand_f(rng, env, 4), 2)
            assert lhs == rhs
    with pytest.raises(PrecisionExceeded):
        antipode_limit_sides(rand_f(rng, W1, 3), 2)


def test_lambda_product_matches_convolution(AFF):
    one = Poly.one(1)
    for a in mi.up_to(2, 2):
        for b in mi.up_to(2, 2):
            la = TruncatedFunctional(AFF, 4, {a: one})
            lb = TruncatedFunctional(AFF, 4, {b: one})
            assert la * lb == lambda_product(AFF, a, b, 4)


def test_delta_star_multiplicative(AFF):
    rng = random.Random(21)
    f, g = rand_f(rng, AFF, 4), rand_f(rng, AFF, 4)
    lhs, rhs = delta_star_product_sides(f, g, 2, 2)
    assert lhs == rhs


def test_suite_w1_level4():
    results = hopf_axiom_suite(envelope("W1"), 4, "W1")
    assert results and all(r.passed for r in results), report(results)
    assert report(results).splitlines()[0] == "PASS delta-counit-left W1 4"


def test_suite_aff_level3():
    results = hopf_axiom_suite(envelope("AFF"), 3, "AFF")
    assert all(r.passed for r in results), report(results)


def test_mutated_control_fails_with_witness():
    env = Envelope(load_fixture("W1"), translation_sign=1)
    results = {r.check: r for r in hopf_axiom_suite(env, 2, "W1-mutated")}
    limit = results["antipode-limit"]
    assert not limit.passed
    assert limit.line() == "FAIL antipode-limit W1-mutated 2 f=theta(1; x1) lhs={[0]: x1, [1]: -2} rhs={[0]: x1}"
    assert results["delta-coassociative"].passed


def test_suite_rejects_level_zero(W1):
    with pytest.raises(ValueError):
        hopf_axiom_suite(W1, 0)
