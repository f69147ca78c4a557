"""Sparse multivariate polynomials over the rationals.

A :class:`Poly` lives in a fixed ring ``Q[x1..xk]``; the number of variables
is part of the value and mixing rings is an error.  Values are immutable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]


class VariableCountMismatch(ValueError):
    pass


def _grlex_key(e: Exponent):
    # descending graded-lex when used with sorted()
    return (-sum(e),) + tuple(-x for x in e)


class Poly:
    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Scalar] | None = None):
        if nvars < 1:
            raise ValueError("a polynomial ring needs at least one variable")
        self.nvars = nvars
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise VariableCountMismatch(
                        f"exponent {e} does not have length {nvars}"
                    )
                if c:
                    clean[tuple(e)] = Fraction(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exponent, Fraction]) -> "Poly":
        # trusted constructor: terms already canonical
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, nvars: int, c: Scalar) -> "Poly":
        c = Fraction(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def one(cls, nvars: int) -> "Poly":
        return cls.const(nvars, 1)

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        """The variable ``x_{i+1}`` (``i`` is zero-based)."""
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, e: Iterable[int], c: Scalar = 1) -> "Poly":
        e = tuple(e)
        c = Fraction(c)
        return cls._raw(len(e), {e: c} if c else {})

    # -- predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise VariableCountMismatch(
                    f"cannot combine polynomials in {self.nvars} and {other.nvars} variables"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly.zero(self.nvars)
            return Poly._raw(self.nvars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return Poly.zero(self.nvars)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Poly._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = Poly.one(self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == Poly.const(self.nvars, other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # -- calculus -----------------------------------------------------------
    def diff(self, j: int) -> "Poly":
        """Partial derivative in ``x_{j+1}``."""
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            if e[j]:
                f = list(e)
                f[j] -= 1
                out[tuple(f)] = c * e[j]
        return Poly._raw(self.nvars, out)

    def evaluate(self, point: Iterable[Scalar]) -> Fraction:
        point = [Fraction(v) for v in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(point, e):
                if k:
                    t *= v**k
            total += t
        return total

    def leading_term(self) -> tuple[Exponent, Fraction]:
        e = min(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def divexact(self, other: "Poly") -> "Poly":
        """Quotient of an exact division; raises ``ArithmeticError`` otherwise."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if other.is_constant():
            return self * (1 / other.constant_term())
        le, lc = other.leading_term()
        rem = self
        quot: dict[Exponent, Fraction] = {}
        while rem.terms:
            e, c = rem.leading_term()
            if any(a < b for a, b in zip(e, le)):
                raise ArithmeticError("division is not exact")
            q = tuple(a - b for a, b in zip(e, le))
            qc = c / lc
            quot[q] = qc
            rem = rem - other * Poly._raw(self.nvars, {q: qc})
        return Poly._raw(self.nvars, quot)

    # -- display ------------------------------------------------------------
    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]))

    def __str__(self) -> str:
        return render_poly(self)

    def __repr__(self) -> str:
        return f"Poly({self.nvars}, {render_poly(self)!r})"


def render_monomial(e: Exponent, name: str = "x") -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(f"{name}{i + 1}")
        elif k > 1:
            parts.append(f"{name}{i + 1}^{k}")
    return "*".join(parts)


def render_signed_terms(pieces: list[tuple[Fraction, str]]) -> str:
    """Join ``(coefficient, body)`` pairs into ``a - b + c`` form.

    An empty body means a bare number.
    """
    if not pieces:
        return "0"
    out = []
    for idx, (c, body) in enumerate(pieces):
        mag = abs(c)
        if not body:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        if idx == 0:
            out.append(("-" if c < 0 else "") + text)
        else:
            out.append((" - " if c < 0 else " + ") + text)
    return "".join(out)


def render_poly(p: Poly) -> str:
    return render_signed_terms([(c, render_monomial(e)) for e, c in p.sorted_terms()])


class Derivation:
    """A polynomial vector field ``sum_j components[j] * d/dx_j``."""

    __slots__ = ("components",)

    def __init__(self, components: Iterable[Poly]):
        self.components = tuple(components)
        if not self.components:
            raise ValueError("derivation needs at least one component")
        k = self.components[0].nvars
        if len(self.components) != k or any(c.nvars != k for c in self.components):
            raise VariableCountMismatch("derivation components must match the ring")

    @property
    def nvars(self) -> int:
        return len(self.components)

    @classmethod
    def partial(cls, nvars: int, j: int) -> "Derivation":
        comps = [Poly.zero(nvars)] * nvars
        comps[j] = Poly.one(nvars)
        return cls(comps)

    def __call__(self, p: Poly) -> Poly:
        return poly_derive(self, p)

    def bracket(self, other: "Derivation") -> "Derivation":
        """Commutator ``self∘other - other∘self``."""
        return Derivation(
            self(o) - other(s) for s, o in zip(self.components, other.components)
        )

    def scale(self, a: Poly) -> "Derivation":
        return Derivation(a * c for c in self.components)

    def __add__(self, other: "Derivation") -> "Derivation":
        return Derivation(a + b for a, b in zip(self.components, other.components))

    def __sub__(self, other: "Derivation") -> "Derivation":
        return Derivation(a - b for a, b in zip(self.components, other.components))

    def __eq__(self, other):
        return isinstance(other, Derivation) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __repr__(self) -> str:
        return "Derivation(" + ", ".join(render_poly(c) for c in self.components) + ")"


def poly_sum(p: Poly, q: Poly) -> Poly:
    return p + q


def poly_product(p: Poly, q: Poly) -> Poly:
    return p * q


def poly_derive(D: Derivation, p: Poly) -> Poly:
    if D.nvars != p.nvars:
        raise VariableCountMismatch(
            f"derivation on {D.nvars} variables applied to a polynomial in {p.nvars}"
        )
    total = Poly.zero(p.nvars)
    for j, comp in enumerate(D.components):
        if comp:
            total = total + comp * p.diff(j)
    return total
