import random
from math import factorial

import pytest

from lrhopf import multiindex as mi
from lrhopf.fixtures import envelope
from lrhopf.functionals import TruncatedFunctional, truncate, vartheta
from lrhopf.hopf import random_poly
from lrhopf.jets import (
    Jet,
    JetDuality,
    eta_triangle_check,
    h_jet,
    jet_from_tensor,
    jet_mul,
    jet_to_functional,
    jet_to_tensor_poly,
    k_guard,
    theta_matrix,
)
from lrhopf.poly import Poly

ONE = Poly.one(1)
X = Poly.var(1, 0)


def c(v, k=1):
    return Poly.const(k, v)


def test_jet_from_tensor_examples():
    assert str(jet_from_tensor(ONE, X, 2)) == "x1 + h1"
    assert jet_from_tensor(X + 3, ONE, 4) == Jet(1, 4, {(0,): X + 3})
    assert jet_from_tensor(ONE, X * X, 1) == Jet(1, 1, {(0,): X * X, (1,): 2 * X})


def test_jet_mul_examples():
    h2 = h_jet(1, 0, 2)
    assert jet_mul(h2, h2) == Jet(1, 2, {(2,): ONE})
    h1 = h_jet(1, 0, 1)
    assert jet_mul(h1, h1) == Jet(1, 1, {})
    lhs = jet_mul(jet_from_tensor(ONE, X, 3), jet_from_tensor(X, ONE, 3))
    assert lhs == jet_from_tensor(X, X, 3)


def test_jet_to_functional_examples(W1):
    assert jet_to_functional(h_jet(1, 0, 2), W1, 2) == TruncatedFunctional(W1, 2, {(1,): c(-1)})
    h = h_jet(1, 0, 3)
    assert jet_to_functional(h * h, W1, 3) == TruncatedFunctional(W1, 3, {(2,): c(2)})
    a = X * X - 1
    assert jet_to_functional(Jet(1, 3, {(0,): a}), W1, 3) == truncate(vartheta(W1, a, ONE), 3)


@pytest.mark.parametrize("name", ["W1", "W2", "AFF"])
def test_jet_duality_agrees_with_vartheta(name):
    # ϑ̂ of the Taylor expansion of a'⊗a is ϑ(a'⊗a)
    env = envelope(name)
    rng = random.Random(6)
    for _ in range(5):
        a1, a = random_poly(rng, env.nvars, 2), random_poly(rng, env.nvars, 2)
        j = jet_from_tensor(a1, a, 3)
        assert jet_to_functional(j, env, 3) == truncate(vartheta(env, a1, a), 3)


def test_theta_matrix_examples(W1, W2):
    rows, det = theta_matrix(W1, 1)
    assert rows == [[ONE, Poly.zero(1)], [Poly.zero(1), c(-1)]] and det == c(-1)
    rows, det = theta_matrix(W1, 2)
    assert [rows[i][i] for i in range(3)] == [c(1), c(-1), c(2)] and det == c(-2)
    rows, det = theta_matrix(W2, 1)
    diag = [c(1, 2), c(-1, 2), c(-1, 2)]
    assert rows == [[diag[i] if i == j else Poly.zero(2) for j in range(3)] for i in range(3)]


def test_theta_matrix_w1_determinants(W1):
    # frozen from the diagonal (-1)^k k!
    dets = [theta_matrix(W1, n)[1] for n in range(6)]
    assert dets == [c(v) for v in (1, -1, -2, 12, 288, -34560)]
    rows, _ = theta_matrix(W1, 5)
    assert [rows[k][k] for k in range(6)] == [c((-1) ** k * factorial(k)) for k in range(6)]
    assert all(not rows[i][j] for i in range(6) for j in range(6) if i != j)


def test_theta_matrix_w2_invertible(W2):
    for n in range(6):
        _, det = theta_matrix(W2, n)
        assert det and det.is_constant()


def test_theta_matrix_needs_full_derivations(AFF):
    with pytest.raises(ValueError):
        theta_matrix(AFF, 2)


def test_eta_triangle(W1, AFF):
    assert eta_triangle_check(W1, ONE, ONE, 4)
    assert eta_triangle_check(W1, ONE, X, 3)
    rng = random.Random(12)
    for _ in range(20):
        assert eta_triangle_check(AFF, random_poly(rng, 1, 2), random_poly(rng, 1, 2), 3)


def test_k_guard():
    rng = random.Random(0)
    for k in (1, 2):
        samples = [(random_poly(rng, k, 2), random_poly(rng, k, 3)) for _ in range(5)]
        assert k_guard(k, 4, samples)


def test_tensor_poly_reconstruction():
    x, y = Poly.var(2, 0), Poly.var(2, 1)
    j = jet_from_tensor(X, X * X, 2)
    assert jet_to_tensor_poly(j) == x * y * y


def test_h_power_memo(W2):
    d = JetDuality(W2)
    f = d.h_power((1, 1), 2)
    assert f is d.h_power((1, 1), 2)
    assert f == TruncatedFunctional(W2, 2, {(1, 1): Poly.one(2)})
    assert mi.up_to(2, 2)[0] == (0, 0)


def test_bad_precision():
    with pytest.raises(ValueError):
        Jet(1, -1, {})
