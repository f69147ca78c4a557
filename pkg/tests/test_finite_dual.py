import random

import pytest

from lrhopf import multiindex as mi
from lrhopf.fixtures import envelope, seed_reps
from lrhopf.finite_dual import (
    DualRep,
    RepError,
    density_diagnostic,
    dual_rep,
    dualrep_antipode,
    dualrep_coprod,
    dualrep_counit,
    dualrep_mul,
    eta,
    flatness_defect,
    k_order_check,
    load_rep,
    make_rep,
    normalize,
    tensor_rep,
    trivial_rep,
    zeta,
    zeta_truncated,
)
from lrhopf.functionals import TruncatedFunctional, convolve, phi_mn, truncate, vanishing_level, vartheta
from lrhopf.hopf import antipode_star, counit_star, delta_star, random_poly
from lrhopf.poly import Poly

ONE = Poly.one(1)
X = Poly.var(1, 0)


def rep1(env, *entries):
    return make_rep(env, [[[Poly.const(env.nvars, e) if isinstance(e, int) else e]] for e in entries])


def test_trivial_rep_acts_through_counit(W1, AFF):
    t = trivial_rep(W1)
    assert t.act_monomial([X * X], (1,)) == [-2 * X]
    a = X * X + 1
    for alpha in mi.up_to(2, 3):
        u = AFF.monomial(alpha)
        assert trivial_rep(AFF).act_monomial([a], alpha) == [AFF.counit(AFF.lmul_coeff(a, u))]
    assert t.act_monomial([X], (0,)) == [X]


def test_load_rep_examples(W1, AFF):
    load_rep({"rank": 1, "matrices": [[["1"]]]}, W1)
    load_rep({"rank": 1, "matrices": [[["0"]], [["0"]]]}, AFF)
    with pytest.raises(RepError) as info:
        load_rep({"rank": 1, "matrices": [[["1"]], [["0"]]]}, AFF)
    assert info.value.kind == "flatness" and info.value.indices == (1, 2)


def test_aff_scale_rep_is_flat(AFF):
    # ρ₂ρ₁ - ρ₁ρ₂ on constants with R₁=0, R₂=1 equals -ρ₁, so this one is valid
    rep = load_rep({"rank": 1, "matrices": [[["0"]], [["1"]]]}, AFF)
    assert flatness_defect(rep, 0, 1) == [[Poly.zero(1)]]


def test_load_rep_schema_errors(W1, W2):
    with pytest.raises(RepError, match="schema"):
        load_rep({"rank": 1}, W1)
    with pytest.raises(RepError, match="/matrices"):
        load_rep({"rank": 2, "matrices": [[["1"]]]}, W1)
    with pytest.raises(RepError, match="/matrices/0/0/0"):
        load_rep({"rank": 1, "matrices": [[["x1 +"]]]}, W1)
    with pytest.raises(RepError, match="expected 2 matrices"):
        load_rep({"rank": 1, "matrices": [[["1"]]]}, W2)


def test_exponential_rep(W1):
    exp = rep1(W1, 1)
    for k in range(6):
        assert exp.act_monomial([ONE], (k,)) == [ONE]
    assert truncate(zeta(DualRep(exp, (ONE,), (ONE,))), 5) == TruncatedFunctional(
        W1, 5, {(k,): ONE for k in range(6)}
    )


def test_zeta_of_eta_is_vartheta(AFF):
    rng = random.Random(1)
    for _ in range(5):
        a1, a = random_poly(rng, 1, 2), random_poly(rng, 1, 2)
        assert zeta_truncated(eta(AFF, a1, a), 3) == truncate(vartheta(AFF, a1, a), 3)
        assert dualrep_counit(eta(AFF, a1, a)) == a1 * a


def test_tensor_and_dual_reps(W1, W2):
    exp = rep1(W1, 1)
    assert tensor_rep(exp, exp).matrices == ((( Poly.const(1, 2),),),)
    assert dual_rep(exp).matrices == (((Poly.const(1, -1),),),)
    assert dual_rep(trivial_rep(W1)).matrices == trivial_rep(W1).matrices
    for rep in seed_reps(W2):
        assert dual_rep(dual_rep(rep)).matrices == rep.matrices
        t = tensor_rep(trivial_rep(W2), rep)
        assert t.matrices == rep.matrices


@pytest.mark.parametrize("name", ["W1", "W2", "AFF", "SL2", "NC"])
def test_seed_reps_tensor_flat(name):
    env = envelope(name)
    reps = seed_reps(env)
    for a in reps:
        for b in reps:
            tensor_rep(a, b)  # validates flatness


def random_dual(rng, reps):
    rep = rng.choice(reps)
    k = rep.env.nvars
    return DualRep(rep, tuple(random_poly(rng, k, 1) for _ in range(rep.rank)),
                   tuple(random_poly(rng, k, 1) for _ in range(rep.rank)))


@pytest.mark.parametrize("name", ["W1", "W2", "AFF", "SL2", "NC"])
def test_zeta_compatibilities(name):
    env = envelope(name)
    reps = seed_reps(env)
    rng = random.Random(17)
    for _ in range(8):
        w1, w2 = random_dual(rng, reps), random_dual(rng, reps)
        assert counit_star(zeta_truncated(w1, 2)) == dualrep_counit(w1)
        assert zeta_truncated(dualrep_mul(w1, w2), 3) == convolve(zeta_truncated(w1, 3), zeta_truncated(w2, 3))
        assert zeta_truncated(dualrep_antipode(w1), 3) == antipode_star(zeta_truncated(w1, 3))
        parts = [(zeta_truncated(a, 2), zeta_truncated(b, 1)) for a, b in dualrep_coprod(w1)]
        assert delta_star(zeta_truncated(w1, 3), 2, 1) == phi_mn(parts, 2, 1)


def test_normalize_lands_in_kernel(W2):
    rng = random.Random(8)
    for rep in seed_reps(W2):
        w = random_dual(rng, [rep])
        n = normalize(w)
        assert dualrep_counit(n) == Poly.zero(2)
        assert zeta_truncated(n, 0).values == {}


def test_k_order(W1, AFF):
    x = Poly.var(1, 0)
    ws = [eta(W1, ONE, x), eta(W1, ONE, x)]
    assert k_order_check(ws)
    f = zeta_truncated(dualrep_mul(normalize(ws[0]), normalize(ws[1])), 2)
    assert f == TruncatedFunctional(W1, 2, {(2,): Poly.const(1, 2)})
    assert vanishing_level(f) == 2
    rng = random.Random(23)
    reps = seed_reps(AFF)
    for length in (1, 2, 3):
        assert k_order_check([random_dual(rng, reps) for _ in range(length)])
    with pytest.raises(ValueError):
        k_order_check([])


def test_density_examples(W1):
    assert density_diagnostic([eta(W1, ONE, ONE)], 0) == (1, 1)
    x = Poly.var(1, 0)
    exp = rep1(W1, 1)
    ws = [eta(W1, ONE, x), eta(W1, ONE, x * x), DualRep(exp, (ONE,), (ONE,))]
    assert density_diagnostic(ws, 2) == (3, 3)
    assert density_diagnostic([], 2, W1) == (0, 3)
    with pytest.raises(ValueError):
        density_diagnostic([], 2)
