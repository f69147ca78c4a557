"""Structure maps ε*, Δ*, S* on ``U*`` and the executable axiom suite."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable

from . import multiindex as mi
from .enveloping import EnvElement, Envelope
from .functionals import (
    FunctionalOracle,
    PrecisionExceeded,
    TensorFunctional,
    TruncatedFunctional,
    convolve,
    counit_lmul,
    epsilon,
    eval_functional,
    phi_mn,
    truncate,
    vartheta,
)
from .poly import Poly


def counit_star(f: TruncatedFunctional) -> Poly:
    return f.value(f.env._zero_index)


def s_star(env: Envelope, a: Poly) -> FunctionalOracle:
    """Source map ``a ↦ ϑ(a⊗1)`` as an oracle."""
    return vartheta(env, a, Poly.one(env.nvars))


def t_star(env: Envelope, a: Poly) -> FunctionalOracle:
    """Target map ``a ↦ ϑ(1⊗a)`` as an oracle."""
    return vartheta(env, Poly.one(env.nvars), a)


def act_left(f: TruncatedFunctional, alpha, precision: int) -> TruncatedFunctional:
    """``f ↼ X^α``, i.e. ``w ↦ f(X^α w)``, at the given precision."""
    env = f.env
    alpha = tuple(alpha)
    if sum(alpha) + precision > f.precision:
        raise PrecisionExceeded(sum(alpha) + precision, f.precision)
    values = {}
    for w in mi.up_to(env.rank, precision):
        values[w] = eval_functional(f, env.element(env._mono_product(alpha, w)))
    return TruncatedFunctional(env, precision, values)


def act_coeff(f: TruncatedFunctional, a: Poly) -> TruncatedFunctional:
    """``f ↼ a``, i.e. ``w ↦ f(ι_A(a) w)``."""
    env = f.env
    values = {}
    for w in mi.up_to(env.rank, f.precision):
        values[w] = eval_functional(f, env.lmul_coeff(a, env.monomial(w)))
    return TruncatedFunctional(env, f.precision, values)


def delta_star(f: TruncatedFunctional, m: int, n: int) -> TensorFunctional:
    """Level-(m, n) projection of ``Δ*(f) = Σ_α (f↼X^α) ⊗ λ_α``.

    ``table[(β, α)] = f(X^α X^β)``.
    """
    if f.precision < m + n:
        raise PrecisionExceeded(m + n, f.precision)
    env = f.env
    table = {}
    for alpha in mi.up_to(env.rank, n):
        for beta in mi.up_to(env.rank, m):
            v = eval_functional(f, env.element(env._mono_product(alpha, beta)))
            if v:
                table[(beta, alpha)] = v
    return TensorFunctional(env, m, n, table)


def fuv_sides(f: TruncatedFunctional, u: EnvElement, v: EnvElement) -> tuple[Poly, Poly]:
    """``f(uv)`` and ``Σ_α (f↼X^α)(λ_α(u)·v)``."""
    n, m = max(u.degree(), 0), max(v.degree(), 0)
    lhs = eval_functional(f, u * v)
    rhs = delta_star(f, m, n).evaluate(u, v)
    return lhs, rhs


def fuv_check(f: TruncatedFunctional, u: EnvElement, v: EnvElement) -> bool:
    lhs, rhs = fuv_sides(f, u, v)
    return lhs == rhs


def antipode_star(f: TruncatedFunctional) -> TruncatedFunctional:
    """``S*(f)(u) = ε(f(u₋)·u₊)``."""
    env = f.env
    values = {}
    for alpha in mi.up_to(env.rank, f.precision):
        total = Poly.zero(env.nvars)
        for (b, g), c in env._translate_mono(alpha).items():
            fb = f.values.get(b)
            if fb is not None:
                total = total + counit_lmul(env, fb, g) * c
        values[alpha] = total
    return TruncatedFunctional(env, f.precision, values)


def _pull_translate(env: Envelope, f: TruncatedFunctional, u: EnvElement) -> EnvElement:
    """``f(u₋)·u₊``."""
    total = env.zero()
    for (b, g), c in env.translate(u).terms.items():
        fb = f.value(b)
        if fb:
            total = total + env.lmul_coeff(fb, env.monomial(g, c))
    return total


def antipode_lemma_sides(f: TruncatedFunctional, h: TruncatedFunctional, u: EnvElement) -> dict:
    """Both sides of each pointwise antipode identity at ``u``."""
    env = f.env
    out = {}
    out["i"] = (antipode_star(f * h)(u), antipode_star(f)(_pull_translate(env, h, u)))
    lhs = (antipode_star(f) * h)(u)
    out["ii"] = (lhs, h(_pull_translate(env, f, u)))
    rhs = Poly.zero(env.nvars)
    for (b, g), c in env.translate(u).terms.items():
        fb = f.value(b)
        left = truncate(vartheta(env, Poly.one(env.nvars), fb), h.precision)
        rhs = rhs + (left * h)(env.monomial(g, c))
    out["iii"] = (lhs, rhs)
    return out


def antipode_pointwise_check(f: TruncatedFunctional, h: TruncatedFunctional, u: EnvElement) -> bool:
    return all(a == b for a, b in antipode_lemma_sides(f, h, u).values())


def antipode_limit_sides(f: TruncatedFunctional, n: int) -> tuple[TruncatedFunctional, TruncatedFunctional]:
    """Level-n projection of ``Σ f₁ * S*(f₂)`` against ``s*(ε*(f))``.

    Uses ``Δ*(f) = Σ_α (f↼X^α) ⊗ λ_α``; needs ``f`` at precision ``2n``.
    """
    env = f.env
    if f.precision < 2 * n:
        raise PrecisionExceeded(2 * n, f.precision)
    one = Poly.one(env.nvars)
    total = TruncatedFunctional(env, n, {})
    for alpha in mi.up_to(env.rank, n):
        lam = TruncatedFunctional(env, n, {alpha: one})
        total = total + convolve(act_left(f, alpha, n), antipode_star(lam))
    return total, truncate(vartheta(env, counit_star(f), one), n)


def lambda_product(env: Envelope, alpha, beta, n: int) -> TruncatedFunctional:
    """``λ_α * λ_β = C(α+β, α)·λ_{α+β}`` at precision ``n``."""
    g = mi.add(alpha, beta)
    if sum(g) > n:
        return TruncatedFunctional(env, n, {})
    return TruncatedFunctional(env, n, {g: Poly.const(env.nvars, mi.binomial(g, alpha))})


def delta_star_product_sides(
    f: TruncatedFunctional, g: TruncatedFunctional, p: int, q: int
) -> tuple[TensorFunctional, TensorFunctional]:
    """``Δ*(f*g)`` against the level-(p, q) product of ``Δ*(f)`` and ``Δ*(g)``."""
    env = f.env
    lhs = delta_star(f * g, p, q)
    grouped: dict = {}
    for a in mi.up_to(env.rank, q):
        fa = act_left(f, a, p)
        for b in mi.up_to(env.rank, q - sum(a)):
            part = convolve(fa, act_left(g, b, p)).scale(Poly.const(env.nvars, mi.binomial(mi.add(a, b), a)))
            key = mi.add(a, b)
            grouped[key] = grouped[key] + part if key in grouped else part
    one = Poly.one(env.nvars)
    parts = [(h, TruncatedFunctional(env, q, {k: one})) for k, h in sorted(grouped.items())]
    return lhs, phi_mn(parts, p, q)


# -- suite ------------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    check: str
    fixture: str
    level: int
    passed: bool
    witness: str = ""

    def line(self) -> str:
        head = f"{'PASS' if self.passed else 'FAIL'} {self.check} {self.fixture} {self.level}"
        return head if self.passed or not self.witness else f"{head} {self.witness}"


def sample_functionals(env: Envelope, precision: int, seed: int = 0, count: int = 2) -> list[tuple[str, TruncatedFunctional]]:
    """Named functionals used by the suites: ε, ϑ's, and seeded random tables."""
    k = env.nvars
    x = Poly.var(k, 0)
    one = Poly.one(k)
    out = [
        ("eps", truncate(epsilon(env), precision)),
        ("theta(1; x1)", truncate(vartheta(env, one, x), precision)),
        ("theta(x1; 1)", truncate(vartheta(env, x, one), precision)),
        ("theta(x1^2; x1 + 2)", truncate(vartheta(env, x * x, x + 2), precision)),
    ]
    rng = random.Random(seed)
    for i in range(count):
        values = {a: random_poly(rng, k, 2) for a in mi.up_to(env.rank, precision)}
        out.append((f"random#{i}", TruncatedFunctional(env, precision, values)))
    return out


def random_poly(rng: random.Random, nvars: int, degree: int, density: float = 0.5) -> Poly:
    terms = {}
    for d in range(degree + 1):
        for e in mi.of_degree(nvars, d):
            if rng.random() < density:
                terms[e] = rng.randint(-3, 3)
    return Poly(nvars, terms)


def random_element(rng: random.Random, env: Envelope, degree: int, coeff_degree: int = 1) -> EnvElement:
    terms = {}
    for a in mi.up_to(env.rank, degree):
        if rng.random() < 0.5:
            c = random_poly(rng, env.nvars, coeff_degree)
            if c:
                terms[a] = c
    return env.element(terms)


def test_elements(env: Envelope, n: int) -> list[EnvElement]:
    """All monomials of degree ``<= n``, bare and with right coefficient ``x1``."""
    x = Poly.var(env.nvars, 0)
    out = []
    for a in mi.up_to(env.rank, n):
        out.append(env.monomial(a))
        out.append(env.monomial(a, x + 1))
    return out


class _Collector:
    def __init__(self, fixture: str, level: int):
        self.fixture = fixture
        self.level = level
        self.results: list[CheckResult] = []

    def run(self, check: str, cases: Iterable[tuple[str, Callable[[], bool]]]) -> None:
        for witness, test in cases:
            if not test():
                self.results.append(CheckResult(check, self.fixture, self.level, False, witness))
                return
        self.results.append(CheckResult(check, self.fixture, self.level, True))


def hopf_axiom_suite(env: Envelope, n: int, fixture: str = "", seed: int = 0) -> list[CheckResult]:
    """Run every complete-Hopf-algebroid check at level ``n``."""
    if n < 1:
        raise ValueError("suite level must be at least 1")
    fixture = fixture or env.presentation.name
    col = _Collector(fixture, n)
    k = env.nvars
    one = Poly.one(k)
    x = Poly.var(k, 0)
    fs_n = sample_functionals(env, n, seed)
    fs_2n = sample_functionals(env, 2 * n, seed)
    fs_3n = sample_functionals(env, 3 * n, seed, count=1)
    elems = test_elements(env, n)

    def counit_cases(side: str):
        for name, f in fs_n:
            row = delta_star(f, 0, n) if side == "left" else delta_star(f, n, 0)
            got = row.component(env._zero_index) if side == "right" else TruncatedFunctional(
                env, n, {a: row.entry(env._zero_index, a) for a in mi.up_to(env.rank, n)}
            )
            yield f"f={name}", (lambda got=got, f=f: got == f)
            for u in elems:
                pair = (u, env.one()) if side == "left" else (env.one(), u)
                yield f"f={name} u={u}", (lambda f=f, pair=pair: fuv_check(f, *pair))

    col.run("delta-counit-left", counit_cases("left"))
    col.run("delta-counit-right", counit_cases("right"))

    def coassoc_cases():
        monos = mi.up_to(env.rank, n)
        for name, f in fs_3n:
            left = delta_star(f, 2 * n, n)
            right = delta_star(f, n, 2 * n)
            for a in monos:
                xa = env.monomial(a)
                for b in monos:
                    xb = env.monomial(b)
                    ab = xa * xb
                    for c in monos:
                        xc = env.monomial(c)

                        def test(xa=xa, xb=xb, xc=xc, ab=ab):
                            # f(X^α (X^β X^γ)) against f((X^α X^β) X^γ)
                            return left.evaluate(xa, xb * xc) == right.evaluate(ab, xc)

                        yield f"f={name} ({xa}, {xb}, {xc})", test

    col.run("delta-coassociative", coassoc_cases())

    def mult_cases():
        for (n1, f), (n2, g) in zip(fs_2n, fs_2n[1:] + fs_2n[:1]):
            yield f"f={n1} g={n2}", (lambda f=f, g=g: _eq(delta_star_product_sides(f, g, n, n)))

    col.run("delta-multiplicative", mult_cases())

    col.run(
        "counit-multiplicative",
        (
            (f"f={n1} g={n2}", lambda f=f, g=g: counit_star(f * g) == counit_star(f) * counit_star(g))
            for n1, f in fs_n
            for n2, g in fs_n
        ),
    )

    def lemma_cases():
        for (n1, f), (n2, h) in zip(fs_n, fs_n[1:] + fs_n[:1]):
            for u in elems:
                sides = antipode_lemma_sides(f, h, u)
                for tag, (a, b) in sides.items():
                    yield f"({tag}) f={n1} h={n2} u={u}", (lambda a=a, b=b: a == b)

    col.run("antipode-lemma", lemma_cases())

    def limit_cases():
        for name, f in fs_2n:
            lhs, rhs = antipode_limit_sides(f, n)
            yield f"f={name} lhs={lhs} rhs={rhs}", (lambda lhs=lhs, rhs=rhs: lhs == rhs)

    col.run("antipode-limit", limit_cases())
    col.run(
        "antipode-involution",
        ((f"f={name}", lambda f=f: antipode_star(antipode_star(f)) == f) for name, f in fs_n),
    )
    col.run(
        "antipode-multiplicative",
        (
            (f"f={n1} g={n2}", lambda f=f, g=g: antipode_star(f * g) == antipode_star(f) * antipode_star(g))
            for n1, f in fs_n
            for n2, g in fs_n
        ),
    )

    def swap_cases():
        for a in (one, x, x * x + 3, x + Poly.var(k, k - 1)):
            s = truncate(s_star(env, a), n)
            t = truncate(t_star(env, a), n)
            yield f"a={a}", (lambda s=s, t=t: antipode_star(s) == t and antipode_star(t) == s)

    col.run("antipode-source-target", swap_cases())
    col.run(
        "translation-counit",
        ((f"f={name} u={u}", lambda f=f, u=u: _translation_counit(f, u)) for name, f in fs_n for u in elems),
    )
    return col.results


def _eq(pair) -> bool:
    return pair[0] == pair[1]


def _translation_counit(f: TruncatedFunctional, u: EnvElement) -> bool:
    # f(u₋u₊) = f(1)ε(u)
    env = f.env
    prod_ = env.zero()
    for (b, g), c in env.translate(u).terms.items():
        prod_ = prod_ + env.element(env._mul_terms({b: Poly.one(env.nvars)}, {g: c}))
    return f(prod_) == counit_star(f) * env.counit(u)


def report(results: Iterable[CheckResult]) -> str:
    return "\n".join(r.line() for r in results)
