"""Right A-linear functionals on ``U``: the convolution algebra ``U*`` at finite precision.

A :class:`FunctionalOracle` is a rule ``α ↦ f(X^α)`` valid for every
multi-index; a :class:`TruncatedFunctional` is its table on ``|α| <= n``,
which determines ``f`` on ``FⁿU`` by right linearity.
"""

from __future__ import annotations

import re
from typing import Callable, Iterable

from . import multiindex as mi
from .enveloping import EnvElement, Envelope
from .expr import ParseError, parse_poly
from .poly import Poly


class PrecisionExceeded(ArithmeticError):
    def __init__(self, degree: int, precision: int):
        self.degree = degree
        self.precision = precision
        super().__init__(f"degree {degree} exceeds precision {precision}; truncate deeper")


class LevelMismatch(ValueError):
    pass


def counit_lmul(env: Envelope, a: Poly, alpha) -> Poly:
    """``ε(ι_A(a)·X^α)`` without forming the product.

    Since ``ε(X_i w) = 0``, moving ``a`` past each generator leaves
    ``(-1)^|α| ω_{i_k}(··· ω_{i_1}(a))``.
    """
    anchor = env.presentation.anchor
    for i in mi.word(alpha):
        if not a:
            return a
        a = -anchor[i](a)
    return a


class FunctionalOracle:
    """A total rule ``α ↦ f(X^α)``; must be pure."""

    def __init__(self, env: Envelope, rule: Callable[[tuple], Poly], name: str = "f"):
        self.env = env
        self.rule = rule
        self.name = name

    def __call__(self, alpha) -> Poly:
        return self.rule(tuple(alpha))

    def __repr__(self) -> str:
        return f"FunctionalOracle({self.name})"


class TruncatedFunctional:
    """``f`` restricted to ``FⁿU``; only nonzero values are stored."""

    __slots__ = ("env", "precision", "values")

    def __init__(self, env: Envelope, precision: int, values: dict):
        if precision < 0:
            raise ValueError("precision must be nonnegative")
        self.env = env
        self.precision = precision
        clean = {}
        for a, v in values.items():
            a = tuple(a)
            if sum(a) > precision:
                raise PrecisionExceeded(sum(a), precision)
            if v:
                clean[a] = v
        self.values = clean

    def value(self, alpha) -> Poly:
        alpha = tuple(alpha)
        if sum(alpha) > self.precision:
            raise PrecisionExceeded(sum(alpha), self.precision)
        return self.values.get(alpha, Poly.zero(self.env.nvars))

    def __call__(self, u: EnvElement) -> Poly:
        return eval_functional(self, u)

    def restrict(self, m: int) -> "TruncatedFunctional":
        if m > self.precision:
            raise PrecisionExceeded(m, self.precision)
        return TruncatedFunctional(self.env, m, {a: v for a, v in self.values.items() if sum(a) <= m})

    def table(self) -> list[tuple[tuple, Poly]]:
        return [(a, self.value(a)) for a in mi.up_to(self.env.rank, self.precision)]

    def is_zero(self) -> bool:
        return not self.values

    def _aligned(self, other: "TruncatedFunctional"):
        p = min(self.precision, other.precision)
        return p, self.restrict(p), other.restrict(p)

    def __add__(self, other: "TruncatedFunctional") -> "TruncatedFunctional":
        p, f, g = self._aligned(other)
        out = dict(f.values)
        for a, v in g.values.items():
            out[a] = out.get(a, Poly.zero(self.env.nvars)) + v
        return TruncatedFunctional(self.env, p, out)

    def __neg__(self) -> "TruncatedFunctional":
        return TruncatedFunctional(self.env, self.precision, {a: -v for a, v in self.values.items()})

    def __sub__(self, other: "TruncatedFunctional") -> "TruncatedFunctional":
        return self + (-other)

    def __mul__(self, other: "TruncatedFunctional") -> "TruncatedFunctional":
        return convolve(self, other)

    def scale(self, a: Poly) -> "TruncatedFunctional":
        """Valuewise product ``u ↦ f(u)·a``."""
        return TruncatedFunctional(self.env, self.precision, {k: v * a for k, v in self.values.items()})

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedFunctional)
            and self.precision == other.precision
            and self.values == other.values
        )

    def __hash__(self):
        return hash((self.precision, frozenset(self.values.items())))

    def __str__(self) -> str:
        return render_functional(self)

    def __repr__(self) -> str:
        return f"TruncatedFunctional@{self.precision}({render_functional(self)})"


def render_functional(f: TruncatedFunctional) -> str:
    items = [f"{mi.render(a)}: {f.values[a]}" for a in sorted(f.values, key=mi.order_key)]
    return "{" + ", ".join(items) + "}"


# -- basic functionals ------------------------------------------------------


def truncate(f: FunctionalOracle | TruncatedFunctional, n: int) -> TruncatedFunctional:
    if n < 0:
        raise ValueError("precision must be nonnegative")
    if isinstance(f, TruncatedFunctional):
        return f.restrict(n)
    return TruncatedFunctional(f.env, n, {a: f(a) for a in mi.up_to(f.env.rank, n)})


def eval_functional(f: TruncatedFunctional, u: EnvElement) -> Poly:
    d = u.degree()
    if d > f.precision:
        raise PrecisionExceeded(d, f.precision)
    total = Poly.zero(f.env.nvars)
    for a, c in u.terms.items():
        v = f.values.get(a)
        if v is not None:
            total = total + v * c
    return total


def epsilon(env: Envelope) -> FunctionalOracle:
    one, zero = Poly.one(env.nvars), Poly.zero(env.nvars)
    return FunctionalOracle(env, lambda a: zero if any(a) else one, "eps")


def zero_functional(env: Envelope, n: int) -> TruncatedFunctional:
    return TruncatedFunctional(env, n, {})


def vartheta(env: Envelope, a_prime: Poly, a: Poly) -> FunctionalOracle:
    """``ϑ(a'⊗a): u ↦ ε(ι_A(a)·u)·a'``."""
    return FunctionalOracle(
        env, lambda alpha: counit_lmul(env, a, alpha) * a_prime, f"theta({a_prime}; {a})"
    )


def table_functional(env: Envelope, precision: int, table: dict) -> TruncatedFunctional:
    return TruncatedFunctional(env, precision, table)


def convolve(f: TruncatedFunctional, g: TruncatedFunctional) -> TruncatedFunctional:
    """``(f*g)(X^α) = Σ f(X^β)·g(X^γ)·c`` over ``Δ(X^α) = Σ X^β ⊗ X^γ·c``."""
    env = f.env
    p = min(f.precision, g.precision)
    out = {}
    for alpha in mi.up_to(env.rank, p):
        total = Poly.zero(env.nvars)
        for (b, c_), coef in env._coprod_mono(alpha).items():
            fb = f.values.get(b)
            if fb is None:
                continue
            gc = g.values.get(c_)
            if gc is None:
                continue
            total = total + fb * gc * coef
        if total:
            out[alpha] = total
    return TruncatedFunctional(env, p, out)


def convolve_power(f: TruncatedFunctional, k: int) -> TruncatedFunctional:
    result = truncate(epsilon(f.env), f.precision)
    for _ in range(k):
        result = convolve(result, f)
    return result


def vanishing_level(f: TruncatedFunctional) -> int:
    """Largest ``k <= precision+1`` with ``f`` vanishing on ``F^{k-1}U``."""
    if not f.values:
        return f.precision + 1
    return min(sum(a) for a in f.values)


# -- completed tensor at level (m, n) ---------------------------------------


class TensorFunctional:
    """``Σ_α g_α ⊗ λ_α`` with ``g_α(X^β) = table[(β, α)]``, ``|β|<=m``, ``|α|<=n``."""

    __slots__ = ("env", "m", "n", "table")

    def __init__(self, env: Envelope, m: int, n: int, table: dict):
        self.env = env
        self.m = m
        self.n = n
        self.table = {k: v for k, v in table.items() if v}

    def entry(self, beta, alpha) -> Poly:
        return self.table.get((tuple(beta), tuple(alpha)), Poly.zero(self.env.nvars))

    def component(self, alpha) -> TruncatedFunctional:
        """``g_α`` as a functional at precision ``m``."""
        alpha = tuple(alpha)
        return TruncatedFunctional(
            self.env, self.m, {b: v for (b, a), v in self.table.items() if a == alpha}
        )

    def evaluate(self, x: EnvElement, y: EnvElement) -> Poly:
        """``Σ_α g_α(λ_α(x)·y)`` for ``x ∈ FⁿU``, ``y ∈ FᵐU``."""
        if x.degree() > self.n:
            raise PrecisionExceeded(x.degree(), self.n)
        if y.degree() > self.m:
            raise PrecisionExceeded(y.degree(), self.m)
        env = self.env
        total = Poly.zero(env.nvars)
        for alpha, lam in x.terms.items():
            w = env.lmul_coeff(lam, y)
            for b, c in w.terms.items():
                v = self.table.get((b, alpha))
                if v is not None:
                    total = total + v * c
        return total

    def rows(self) -> list[list[Poly]]:
        r = self.env.rank
        return [[self.entry(b, a) for a in mi.up_to(r, self.n)] for b in mi.up_to(r, self.m)]

    def __eq__(self, other):
        return (
            isinstance(other, TensorFunctional)
            and (self.m, self.n) == (other.m, other.n)
            and self.table == other.table
        )

    def __hash__(self):
        return hash((self.m, self.n, frozenset(self.table.items())))

    def __repr__(self) -> str:
        return f"TensorFunctional({self.m},{self.n})"


def phi_mn(
    parts: Iterable[tuple[TruncatedFunctional, TruncatedFunctional]], m: int, n: int
) -> TensorFunctional:
    """``φ_{m,n}(Σ f_i ⊗ g_i)`` as the table of ``x⊗y ↦ Σ f_i(g_i(x)·y)`` on monomials."""
    parts = list(parts)
    if not parts:
        raise LevelMismatch("phi_mn needs at least one part")
    env = parts[0][0].env
    for f, g in parts:
        if f.precision < m or g.precision < n:
            raise LevelMismatch(f"parts at ({f.precision},{g.precision}) cannot give level ({m},{n})")
    table: dict = {}
    for alpha in mi.up_to(env.rank, n):
        for beta in mi.up_to(env.rank, m):
            total = Poly.zero(env.nvars)
            for f, g in parts:
                ga = g.value(alpha)
                if ga:
                    total = total + eval_functional(f, env.lmul_coeff(ga, env.monomial(beta)))
            if total:
                table[(beta, alpha)] = total
    return TensorFunctional(env, m, n, table)


def phi_mn_back(t: TensorFunctional) -> Callable[[EnvElement, EnvElement], Poly]:
    return t.evaluate


# -- literal syntax -----------------------------------------------------------

_THETA = re.compile(r"^\s*theta\s*\((?P<a1>[^;]*);(?P<a2>[^)]*)\)\s*$")


def parse_functional(text: str, env: Envelope, precision: int) -> TruncatedFunctional:
    """Parse ``eps``, ``theta(a'; a)`` or ``{[α]: poly, ...}`` at ``precision``."""
    s = text.strip()
    if s == "eps":
        return truncate(epsilon(env), precision)
    m = _THETA.match(s)
    if m:
        a1 = parse_poly(m.group("a1"), env.nvars)
        a2 = parse_poly(m.group("a2"), env.nvars)
        return truncate(vartheta(env, a1, a2), precision)
    if s.startswith("{") and s.endswith("}"):
        return _parse_table(s, env, precision)
    raise ParseError("expected 'eps', 'theta(a'; a)' or a table literal", 0, text)


def _split_top(body: str) -> list[tuple[int, str]]:
    """Split on commas outside brackets and parentheses, keeping offsets."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(body):
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append((start, body[start:i]))
            start = i + 1
    parts.append((start, body[start:]))
    return [(off, p) for off, p in parts if p.strip()]


def _parse_table(s: str, env: Envelope, precision: int) -> TruncatedFunctional:
    values: dict = {}
    for off, entry in _split_top(s[1:-1]):
        pos = off + 1
        head, sep, val = entry.partition(":")
        head = head.strip()
        if not sep or not (head.startswith("[") and head.endswith("]")):
            raise ParseError("table entries look like [a1,...,ar]: poly", pos, s)
        try:
            idx = tuple(int(t) for t in head[1:-1].split(",") if t.strip())
        except ValueError:
            raise ParseError("multi-index entries must be integers", pos, s) from None
        if len(idx) != env.rank or min(idx, default=0) < 0:
            raise ParseError(f"multi-index {list(idx)} must have {env.rank} nonnegative entries", pos, s)
        if sum(idx) > precision:
            raise ParseError(f"multi-index {list(idx)} exceeds precision {precision}", pos, s)
        if idx in values:
            raise ParseError(f"multi-index {list(idx)} given twice", pos, s)
        values[idx] = parse_poly(val, env.nvars)
    return TruncatedFunctional(env, precision, values)

