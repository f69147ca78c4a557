"""Infinite jets ``J(A)``: the completion of ``A⊗A`` at ``K = ker(μ)``.

Jets are stored in ``(x; h)`` coordinates, ``Σ_γ a'_γ(x)·h^γ`` with
``h_j = 1⊗x_j - x_j⊗1``, so the ``K``-adic truncation is an ``h``-degree
cutoff.  For polynomial ``A`` the ideal ``K`` is generated by the ``h_j``;
:func:`k_guard` checks this rather than assuming it.
"""

from __future__ import annotations

from fractions import Fraction

from . import multiindex as mi
from .enveloping import Envelope
from .finite_dual import eta, zeta
from .functionals import (
    TruncatedFunctional,
    convolve,
    truncate,
    vartheta,
)
from .linalg import determinant, rank
from .poly import Poly, render_monomial, render_signed_terms


class Jet:
    __slots__ = ("nvars", "precision", "values")

    def __init__(self, nvars: int, precision: int, values: dict):
        if precision < 0:
            raise ValueError("precision must be nonnegative")
        self.nvars = nvars
        self.precision = precision
        self.values = {tuple(g): v for g, v in values.items() if v and sum(g) <= precision}

    def coeff(self, gamma) -> Poly:
        return self.values.get(tuple(gamma), Poly.zero(self.nvars))

    def __add__(self, other: "Jet") -> "Jet":
        p = min(self.precision, other.precision)
        out = {g: v for g, v in self.values.items() if sum(g) <= p}
        for g, v in other.values.items():
            if sum(g) <= p:
                out[g] = out.get(g, Poly.zero(self.nvars)) + v
        return Jet(self.nvars, p, out)

    def __mul__(self, other: "Jet") -> "Jet":
        return jet_mul(self, other)

    def __eq__(self, other):
        return (
            isinstance(other, Jet)
            and self.precision == other.precision
            and self.values == other.values
        )

    def __hash__(self):
        return hash((self.precision, frozenset(self.values.items())))

    def __str__(self) -> str:
        return render_jet(self)

    def __repr__(self) -> str:
        return f"Jet@{self.precision}({self})"


def render_jet(j: Jet) -> str:
    pieces = []
    for gamma in sorted(j.values, key=mi.order_key):
        c = j.values[gamma]
        h = render_monomial(gamma, "h")
        terms = c.sorted_terms()
        if not h:
            pieces.extend((q, render_monomial(e)) for e, q in terms)
        elif len(terms) == 1:
            e, q = terms[0]
            mono = render_monomial(e)
            pieces.append((q, f"{mono}*{h}" if mono else h))
        else:
            pieces.append((Fraction(1), f"({render_signed_terms([(q, render_monomial(e)) for e, q in terms])})*{h}"))
    return render_signed_terms(pieces)


def h_jet(nvars: int, j: int, precision: int) -> Jet:
    return Jet(nvars, precision, {mi.unit(nvars, j): Poly.one(nvars)})


def jet_from_tensor(a_prime: Poly, a: Poly, n: int) -> Jet:
    """``a'⊗a ≡ Σ_{|γ|<=n} a'·∂^γa/γ! · h^γ``."""
    k = a.nvars
    out = {}
    for gamma in mi.up_to(k, n):
        d = a
        for j, e in enumerate(gamma):
            for _ in range(e):
                d = d.diff(j)
        if d:
            out[gamma] = a_prime * d * Fraction(1, mi.mfactorial(gamma))
    return Jet(k, n, out)


def jet_mul(j1: Jet, j2: Jet) -> Jet:
    if j1.nvars != j2.nvars:
        raise ValueError("jets over different base rings")
    p = min(j1.precision, j2.precision)
    out: dict = {}
    for g1, v1 in j1.values.items():
        for g2, v2 in j2.values.items():
            g = mi.add(g1, g2)
            if sum(g) <= p:
                out[g] = out.get(g, Poly.zero(j1.nvars)) + v1 * v2
    return Jet(j1.nvars, p, out)


class JetDuality:
    """``ϑ̂: J(A) → U*`` with memoized convolution powers of ``ϑ(h_j)``."""

    def __init__(self, env: Envelope):
        self.env = env
        self._powers: dict = {}

    def theta_h(self, j: int, m: int) -> TruncatedFunctional:
        env = self.env
        k = env.nvars
        one, x = Poly.one(k), Poly.var(k, j)
        return truncate(vartheta(env, one, x), m) - truncate(vartheta(env, x, one), m)

    def h_power(self, gamma, m: int) -> TruncatedFunctional:
        """``Π_j ϑ(h_j)^{*γ_j}`` at precision ``m``."""
        gamma = tuple(gamma)
        key = (gamma, m)
        hit = self._powers.get(key)
        if hit is None:
            last = mi.max_index(gamma)
            if last < 0:
                hit = truncate(vartheta(self.env, Poly.one(self.env.nvars), Poly.one(self.env.nvars)), m)
            else:
                prev = self.h_power(mi.sub(gamma, mi.unit(len(gamma), last)), m)
                hit = convolve(prev, self.theta_h(last, m))
            self._powers[key] = hit
        return hit

    def to_functional(self, j: Jet, m: int) -> TruncatedFunctional:
        env = self.env
        one = Poly.one(env.nvars)
        total = TruncatedFunctional(env, m, {})
        for gamma, a in j.values.items():
            src = truncate(vartheta(env, a, one), m)
            total = total + convolve(src, self.h_power(gamma, m))
        return total

    def theta_matrix(self, n: int) -> tuple[list[list[Poly]], Poly]:
        env = self.env
        if not env.presentation.is_full_derivations():
            raise ValueError(
                "theta_matrix needs L = Der(A): rank equal to the number of variables, "
                "coordinate anchors and zero brackets"
            )
        k = env.nvars
        rows = []
        for gamma in mi.up_to(k, n):
            f = self.h_power(gamma, n)
            rows.append([f.value(a) for a in mi.up_to(env.rank, n)])
        return rows, determinant(rows, k)


def jet_to_functional(j: Jet, env: Envelope, m: int) -> TruncatedFunctional:
    return JetDuality(env).to_functional(j, m)


def theta_matrix(env: Envelope, n: int) -> tuple[list[list[Poly]], Poly]:
    return JetDuality(env).theta_matrix(n)


def eta_triangle_check(env: Envelope, a_prime: Poly, a: Poly, m: int) -> bool:
    """``ζ(η(a'⊗a)) = ϑ(a'⊗a)`` at precision ``m``."""
    return truncate(zeta(eta(env, a_prime, a)), m) == truncate(vartheta(env, a_prime, a), m)


# -- the K guard ------------------------------------------------------------


def _tensor_poly(a_prime: Poly, a: Poly) -> Poly:
    """``a'⊗a`` as ``a'(x)·a(y)`` in ``2k`` variables."""
    k = a.nvars
    left = Poly(2 * k, {e + (0,) * k: c for e, c in a_prime.terms.items()})
    right = Poly(2 * k, {(0,) * k + e: c for e, c in a.terms.items()})
    return left * right


def _h_poly(k: int, j: int) -> Poly:
    return Poly.var(2 * k, k + j) - Poly.var(2 * k, j)


def _mu(p: Poly, k: int) -> Poly:
    """Multiplication map ``A⊗A → A``: identify ``y`` with ``x``."""
    out = Poly.zero(k)
    for e, c in p.terms.items():
        out = out + Poly(k, {tuple(e[i] + e[k + i] for i in range(k)): c})
    return out


def jet_to_tensor_poly(j: Jet) -> Poly:
    k = j.nvars
    total = Poly.zero(2 * k)
    for gamma, a in j.values.items():
        term = _tensor_poly(a, Poly.one(k))
        for i, e in enumerate(gamma):
            term = term * _h_poly(k, i) ** e
        total = total + term
    return total


def k_guard(nvars: int, n: int, samples=()) -> bool:
    """``μ(h_j) = 0``, exact Taylor reconstruction, and the ``h``-monomial count."""
    k = nvars
    if any(_mu(_h_poly(k, j), k) for j in range(k)):
        return False
    for a_prime, a in samples:
        if a.degree() <= n and jet_to_tensor_poly(jet_from_tensor(a_prime, a, n)) != _tensor_poly(a_prime, a):
            return False
    monos = mi.up_to(k, n)
    one = Poly.one(k)
    rows = []
    for beta in monos:
        jet = jet_from_tensor(one, Poly.monomial(beta), n)
        rows.append([jet.coeff(g) for g in monos])
    return rank(rows, k) == len(monos)
