"""Executable property suites behind ``lrhopf check``.

Every suite returns a list of :class:`~lrhopf.hopf.CheckResult`; a failing
check keeps the first witness it meets.  Sampling is driven by a seeded
``random.Random`` so reports are reproducible byte for byte.
"""

from __future__ import annotations

import random
from math import comb, factorial
from typing import Callable

from . import multiindex as mi
from .enveloping import Envelope, graded_rank
from .finite_dual import (
    DualRep,
    URep,
    dualrep_antipode,
    dualrep_coprod,
    dualrep_counit,
    dualrep_mul,
    k_order_check,
    trivial_rep,
    zeta_truncated,
)
from .fixtures import FIXTURE_NAMES, seed_reps
from .functionals import TruncatedFunctional, convolve, phi_mn
from .hopf import (
    CheckResult,
    _Collector,
    antipode_star,
    counit_star,
    delta_star,
    fuv_check,
    hopf_axiom_suite,
    random_element,
    random_poly,
)
from .identities import beta_failures, schauenburg_failures
from .jets import JetDuality, eta_triangle_check, k_guard
from .poly import Poly

SUITES = ("pbw", "schauenburg", "hopf", "fuv", "zeta", "jets")

# default levels: the ones the acceptance criteria ask for
DEFAULT_LEVELS = {"pbw": 5, "schauenburg": 5, "hopf": 4, "fuv": 2, "zeta": 2, "jets": 5}


def pbw_suite(env: Envelope, n: int, fixture: str, seed: int = 0, pairs: int = 500) -> list[CheckResult]:
    col = _Collector(fixture, n)
    r = env.rank

    def rank_cases():
        for d in range(n + 1):
            got, clean = graded_rank(env, d)
            want = comb(d + r - 1, r - 1)
            yield f"degree {d}: rank {got} (clean={clean}), expected {want}", (
                lambda got=got, clean=clean, want=want: clean and got == want
            )

    col.run("pbw-graded-rank", rank_cases())

    rng = random.Random(seed)

    def degree_cases():
        for _ in range(pairs):
            u = random_element(rng, env, rng.randint(0, 3))
            v = random_element(rng, env, rng.randint(0, 3))
            yield f"u={u} v={v}", (lambda u=u, v=v: (u * v).degree() <= u.degree() + v.degree() or u.is_zero() or v.is_zero())

    col.run("pbw-degree-bound", degree_cases())
    return col.results


def schauenburg_suite(env: Envelope, n: int, fixture: str, seed: int = 0) -> list[CheckResult]:
    failures = schauenburg_failures(env, n)
    names = ("galois", "plus-leg", "minus-leg", "contraction", "antimultiplicative", "base", "double-translate")
    out = []
    for name in names:
        hit = next((f for f in failures if f.identity == name), None)
        out.append(CheckResult(f"schauenburg-{name}", fixture, n, hit is None, hit.witness if hit else ""))
    level = min(n, 4)
    bad = beta_failures(env, level)
    out.append(CheckResult("beta-roundtrip", fixture, level, not bad, bad[0].witness if bad else ""))
    return out


def fuv_suite(env: Envelope, n: int, fixture: str, seed: int = 0, samples: int = 200) -> list[CheckResult]:
    """``f(uv)`` against ``Δ*(f)`` at level ``(n, n)`` on random triples."""
    col = _Collector(fixture, n)
    rng = random.Random(seed)
    k = env.nvars

    def cases():
        for _ in range(samples):
            f = TruncatedFunctional(env, 2 * n, {a: random_poly(rng, k, 2) for a in mi.up_to(env.rank, 2 * n)})
            u = random_element(rng, env, n)
            v = random_element(rng, env, n)
            yield f"f={f} u={u} v={v}", (lambda f=f, u=u, v=v: fuv_check(f, u, v))

    col.run("fuv", cases())
    return col.results


def random_dual(rng: random.Random, reps: list[URep]) -> DualRep:
    rep = reps[rng.randrange(len(reps))]
    k = rep.env.nvars
    phi = tuple(random_poly(rng, k, 1) for _ in range(rep.rank))
    m = tuple(random_poly(rng, k, 1) for _ in range(rep.rank))
    return DualRep(rep, phi, m)


def default_reps(env: Envelope) -> list[URep]:
    """The trivial module plus the bundled seed modules, if the presentation is bundled."""
    extra = seed_reps(env) if env.presentation.name in FIXTURE_NAMES else []
    return [trivial_rep(env)] + [r for r in extra if r.name != "trivial"]


def zeta_suite(
    env: Envelope,
    n: int,
    fixture: str,
    seed: int = 0,
    reps: list[URep] | None = None,
    pairs: int = 100,
    products: int = 50,
) -> list[CheckResult]:
    """Compatibility of ``ζ`` with the structure maps at level ``(n, n)``."""
    col = _Collector(fixture, n)
    rng = random.Random(seed)
    reps = default_reps(env) if reps is None else reps
    p = 2 * n
    singles = [random_dual(rng, reps) for _ in range(20)]

    col.run(
        "zeta-counit",
        ((repr(w), lambda w=w: counit_star(zeta_truncated(w, p)) == dualrep_counit(w)) for w in singles),
    )

    def mult_cases():
        for _ in range(pairs):
            w1, w2 = random_dual(rng, reps), random_dual(rng, reps)
            prec = n + 1

            def test(w1=w1, w2=w2, prec=prec):
                lhs = zeta_truncated(dualrep_mul(w1, w2), prec)
                return lhs == convolve(zeta_truncated(w1, prec), zeta_truncated(w2, prec))

            yield f"{w1!r} * {w2!r}", test

    col.run("zeta-multiplicative", mult_cases())
    col.run(
        "zeta-antipode",
        (
            (repr(w), lambda w=w: zeta_truncated(dualrep_antipode(w), p) == antipode_star(zeta_truncated(w, p)))
            for w in singles
        ),
    )

    def coprod_cases():
        for w in singles:
            f = zeta_truncated(w, p)
            for a in range(n + 1):
                for b in range(n + 1):

                    def test(w=w, f=f, a=a, b=b):
                        parts = [(zeta_truncated(x, a), zeta_truncated(y, b)) for x, y in dualrep_coprod(w)]
                        return delta_star(f, a, b) == phi_mn(parts, a, b)

                    yield f"{w!r} at ({a},{b})", test

    col.run("zeta-coproduct", coprod_cases())

    def korder_cases():
        for _ in range(products):
            ws = [random_dual(rng, reps) for _ in range(rng.randint(1, 3))]
            yield " * ".join(map(repr, ws)), (lambda ws=ws: k_order_check(ws))

    col.run("k-order", korder_cases())
    return col.results


def jets_suite(env: Envelope, n: int, fixture: str, seed: int = 0, pairs: int = 100) -> list[CheckResult]:
    col = _Collector(fixture, n)
    k = env.nvars
    if env.presentation.is_full_derivations():
        duality = JetDuality(env)
        mats = {d: duality.theta_matrix(d) for d in range(n + 1)}

        def invertible_cases():
            for d, (_, det) in mats.items():
                yield f"n={d} det={det}", (lambda det=det: bool(det) and det.degree() == 0)

        col.run("theta-invertible", invertible_cases())
        if k == 1:
            rows, _ = mats[n]
            col.run(
                "theta-diagonal",
                (
                    (f"k={i} entry={rows[i][i]}", lambda i=i: rows[i][i] == Poly.const(1, (-1) ** i * factorial(i)))
                    for i in range(n + 1)
                ),
            )
    rng = random.Random(seed)

    def eta_cases():
        for _ in range(pairs):
            a1, a = random_poly(rng, k, 2), random_poly(rng, k, 2)
            yield f"a'={a1} a={a}", (lambda a1=a1, a=a: eta_triangle_check(env, a1, a, 3))

    col.run("eta-triangle", eta_cases())
    samples = [(random_poly(rng, k, 2), random_poly(rng, k, 3)) for _ in range(10)]
    col.run("k-guard", [(f"n={n}", lambda: k_guard(k, n, samples))])
    return col.results


RUNNERS: dict[str, Callable[..., list[CheckResult]]] = {
    "pbw": pbw_suite,
    "schauenburg": schauenburg_suite,
    "hopf": lambda env, n, fixture, seed=0: hopf_axiom_suite(env, n, fixture, seed),
    "fuv": fuv_suite,
    "zeta": zeta_suite,
    "jets": jets_suite,
}


def run_suite(
    name: str, env: Envelope, level: int | None, fixture: str, seed: int = 0, reps: list[URep] | None = None
) -> list[CheckResult]:
    if name not in RUNNERS:
        raise KeyError(f"unknown suite {name!r}")
    n = DEFAULT_LEVELS[name] if level is None else level
    if name == "zeta":
        return zeta_suite(env, n, fixture, seed, reps)
    return RUNNERS[name](env, n, fixture, seed)
