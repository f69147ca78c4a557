"""Translation-map identities as exact tensor equalities.

Each ``*_sides`` function returns the two sides of one identity, computed
along different routes on canonical representatives.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import multiindex as mi
from .enveloping import COPROD, TRANSLATE, EnvElement, Envelope, Tensor, canonicalize
from .poly import Poly


def _one(env: Envelope) -> Poly:
    return Poly.one(env.nvars)


def galois_sides(u: EnvElement) -> tuple[Tensor, Tensor]:
    """``u₋u₊₁ ⊗ u₊₂ = 1 ⊗ u``."""
    env = u.env
    lhs = env.beta(env.translate(u))
    rhs = canonicalize(env, COPROD, [[{env._zero_index: _one(env)}, u.terms]])
    return lhs, rhs


def plus_leg_sides(u: EnvElement) -> tuple[Tensor, Tensor]:
    """``u₁₋ ⊗ u₁₊ ⊗ u₂ = u₋ ⊗ u₊₁ ⊗ u₊₂``."""
    env = u.env
    kinds = ("l", "r")
    left = []
    for (b, g), c in env.coprod(u).terms.items():
        for (e, t), d in env._translate_mono(b).items():
            left.append(({e: _one(env)}, {t: d}, {g: c}))
    right = []
    for (b, g), c in env.translate(u).terms.items():
        for (g1, g2), d in env._coprod_mono(g).items():
            right.append(({b: _one(env)}, {g1: _one(env)}, {g2: d * c}))
    return canonicalize(env, kinds, left), canonicalize(env, kinds, right)


def minus_leg_sides(u: EnvElement) -> tuple[Tensor, Tensor]:
    """``u₊₋ ⊗ u₋ ⊗ u₊₊ = u₋₁ ⊗ u₋₂ ⊗ u₊``."""
    env = u.env
    kinds = ("r", "r")
    left, right = [], []
    for (b, g), c in env.translate(u).terms.items():
        for (e, t), d in env._translate_mono(g).items():
            left.append(({e: _one(env)}, {b: _one(env)}, {t: d * c}))
        for (b1, b2), d in env._coprod_mono(b).items():
            right.append(({b1: _one(env)}, {b2: d}, {g: c}))
    return canonicalize(env, kinds, left), canonicalize(env, kinds, right)


def contraction_sides(u: EnvElement) -> tuple[EnvElement, EnvElement]:
    """``u₋u₊ = ε(u)``."""
    env = u.env
    total = env.zero()
    for (b, g), c in env.translate(u).terms.items():
        total = total + env.element(env._mul_terms({b: _one(env)}, {g: c}))
    return total, env.const(env.counit(u))


def antimultiplicative_sides(u: EnvElement, v: EnvElement) -> tuple[Tensor, Tensor]:
    """``(uv)₋ ⊗ (uv)₊ = v₋u₋ ⊗ u₊v₊``."""
    env = u.env
    lhs = env.translate(u * v)
    pieces = []
    du, dv = env.translate(u).terms, env.translate(v).terms
    for ((b, g), c), ((e, t), d) in product(du.items(), dv.items()):
        pieces.append((env._mono_product(e, b), env._mul_terms({g: c}, {t: d})))
    return lhs, canonicalize(env, TRANSLATE, pieces)


def base_sides(a: Poly, env: Envelope) -> tuple[Tensor, Tensor]:
    """``δ(a) = 1 ⊗ a = a ⊗ 1``."""
    z = env._zero_index
    lhs = env.translate(env.const(a))
    rhs = canonicalize(env, TRANSLATE, [[{z: a}, {z: _one(env)}]])
    return lhs, rhs


def double_translate_sides(u: EnvElement) -> tuple[Tensor, Tensor]:
    """``u₋₋ ⊗ u₋₊u₊ = u ⊗ 1``."""
    env = u.env
    pieces = []
    for (b, g), c in env.translate(u).terms.items():
        for (e, t), d in env._translate_mono(b).items():
            pieces.append(({e: _one(env)}, env._mul_terms({t: d}, {g: c})))
    rhs = canonicalize(env, TRANSLATE, [[u.terms, {env._zero_index: _one(env)}]])
    return canonicalize(env, TRANSLATE, pieces), rhs


def beta_roundtrip_sides(t: Tensor) -> tuple[Tensor, Tensor]:
    env = t.env
    if t.kinds == TRANSLATE:
        return env.beta_inv(env.beta(t)), t
    return env.beta(env.beta_inv(t)), t


@dataclass(frozen=True)
class IdentityFailure:
    identity: str
    witness: str

    def __str__(self) -> str:
        return f"{self.identity} fails on {self.witness}"


def schauenburg_failures(env: Envelope, max_degree: int = 5, coefficients=None) -> list[IdentityFailure]:
    """Check every identity on all monomials ``X^α·c`` with ``|α| <= max_degree``.

    ``coefficients`` are the right coefficients tried for each monomial;
    the default is ``1`` and ``x1``.
    """
    if coefficients is None:
        coefficients = [Poly.one(env.nvars), Poly.var(env.nvars, 0)]
    failures: list[IdentityFailure] = []
    monos = mi.up_to(env.rank, max_degree)
    for alpha in monos:
        for c in coefficients:
            u = env.monomial(alpha, c)
            for name, sides in (
                ("galois", galois_sides),
                ("plus-leg", plus_leg_sides),
                ("minus-leg", minus_leg_sides),
                ("contraction", contraction_sides),
                ("double-translate", double_translate_sides),
            ):
                lhs, rhs = sides(u)
                if lhs != rhs:
                    failures.append(IdentityFailure(name, str(u)))
    for c in coefficients:
        lhs, rhs = base_sides(c, env)
        if lhs != rhs:
            failures.append(IdentityFailure("base", str(c)))
    x = Poly.var(env.nvars, 0)
    for alpha, beta in product(monos, repeat=2):
        if sum(alpha) + sum(beta) > max_degree:
            continue
        # include a coefficient on the left factor so it must cross v
        u, v = env.monomial(alpha, x), env.monomial(beta)
        lhs, rhs = antimultiplicative_sides(u, v)
        if lhs != rhs:
            failures.append(IdentityFailure("antimultiplicative", f"({u}, {v})"))
    return failures


def beta_failures(env: Envelope, max_level: int = 4) -> list[IdentityFailure]:
    """``β∘β⁻¹`` and ``β⁻¹∘β`` on monomial tensors of level ``<= max_level``."""
    failures = []
    one = Poly.one(env.nvars)
    for d in range(max_level + 1):
        for a in mi.up_to(env.rank, d):
            for b in mi.of_degree(env.rank, d - sum(a)):
                for kinds in (COPROD, TRANSLATE):
                    t = Tensor(env, kinds, {(a, b): one})
                    back, orig = beta_roundtrip_sides(t)
                    if back != orig:
                        failures.append(IdentityFailure("beta-roundtrip", str(t)))
    return failures
