"""The enveloping Hopf algebroid ``U = V_A(L)`` in PBW right-coefficient form.

Elements are stored as ``{α: a_α}`` meaning ``Σ X^α · a_α`` with the ordered
monomials ``X^α = X1^α1 ··· Xr^αr``.  Products are reduced with two rules:

* ``a · X_i = X_i · a - ω_i(a)``
* ``X_j X_i = X_i X_j + Σ_m X_m c[j][i][m]`` for ``j > i``

Tensors over ``A`` are stored on canonical keys ``(α1, ..., αk)`` with the
whole scalar coefficient on the right end of the last leg.  Every boundary
between two legs carries a balancing rule: ``"r"`` for ``u·a ⊗ v = u ⊗ v·a``
(the codomain of Δ) and ``"l"`` for ``u·a ⊗ v = u ⊗ a·v`` (the codomain of δ).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from . import multiindex as mi
from .expr import evaluate, parse
from .poly import Poly, render_monomial, render_signed_terms
from .lie_rinehart import LRPresentation

Terms = dict  # MultiIndex -> Poly

COPROD = ("r",)
TRANSLATE = ("l",)
FLAVORS = {"coprod": COPROD, "translate": TRANSLATE}


def _acc(out: dict, key, value: Poly) -> None:
    if not value:
        return
    prev = out.get(key)
    if prev is None:
        out[key] = value
    else:
        s = prev + value
        if s:
            out[key] = s
        else:
            del out[key]


class Envelope:
    """Arithmetic context for ``V_A(L)`` of one presentation.

    ``translation_sign`` fixes ``δ(X_i) = 1⊗X_i + sign·X_i⊗1``; the correct
    value is ``-1`` and ``+1`` exists only as a negative control.  The memo
    tables are filled once per key and never mutated afterwards.
    """

    def __init__(self, presentation: LRPresentation, translation_sign: int = -1):
        self.presentation = presentation
        self.rank = presentation.rank
        self.nvars = presentation.nvars
        self.translation_sign = translation_sign
        self._zero_index = (0,) * self.rank
        self._rgen: dict = {}
        self._mono_mul: dict = {}
        self._coprod: dict = {}
        self._translate: dict = {}

    # -- constructors -----------------------------------------------------
    def element(self, terms: Terms) -> "EnvElement":
        return EnvElement(self, {a: c for a, c in terms.items() if c})

    def zero(self) -> "EnvElement":
        return EnvElement(self, {})

    def const(self, a) -> "EnvElement":
        if not isinstance(a, Poly):
            a = Poly.const(self.nvars, a)
        return EnvElement(self, {self._zero_index: a} if a else {})

    def one(self) -> "EnvElement":
        return self.const(1)

    def gen(self, i: int) -> "EnvElement":
        return self.monomial(mi.unit(self.rank, i))

    def monomial(self, alpha, coeff: Poly | None = None) -> "EnvElement":
        c = coeff if coeff is not None else Poly.one(self.nvars)
        return EnvElement(self, {tuple(alpha): c} if c else {})

    def parse(self, text: str) -> "EnvElement":
        return evaluate(parse(text), _EnvRing(self), text)

    # -- rewriting core ---------------------------------------------------
    def _mono_rmul_gen(self, mu, j: int) -> Terms:
        """Normal form of ``X^μ X_j``."""
        key = (mu, j)
        hit = self._rgen.get(key)
        if hit is not None:
            return hit
        m = mi.max_index(mu)
        if j >= m:
            res = {mi.add(mu, mi.unit(self.rank, j)): Poly.one(self.nvars)}
        else:
            rest = mi.sub(mu, mi.unit(self.rank, m))
            # X^rest X_m X_j = (X^rest X_j) X_m + X^rest [X_m, X_j]
            res = self._rmul_gen(self._mono_rmul_gen(rest, j), m)
            for l, c in enumerate(self.presentation.structure[m][j]):
                if c:
                    for nu, d in self._mono_rmul_gen(rest, l).items():
                        _acc(res, nu, d * c)
        self._rgen[key] = res
        return res

    def _rmul_gen(self, terms: Terms, j: int) -> Terms:
        """Normal form of ``(Σ X^μ c_μ) · X_j``."""
        out: Terms = {}
        D = self.presentation.anchor[j]
        for mu, c in terms.items():
            for nu, d in self._mono_rmul_gen(mu, j).items():
                _acc(out, nu, d * c)
            _acc(out, mu, -D(c))
        return out

    def _mono_product(self, alpha, beta) -> Terms:
        """Normal form of ``X^α X^β``."""
        key = (alpha, beta)
        hit = self._mono_mul.get(key)
        if hit is None:
            hit = {alpha: Poly.one(self.nvars)}
            for i in mi.word(beta):
                hit = self._rmul_gen(hit, i)
            self._mono_mul[key] = hit
        return hit

    def _mul_terms(self, u: Terms, v: Terms) -> Terms:
        out: Terms = {}
        for beta, b in v.items():
            if not any(beta):
                for alpha, a in u.items():
                    _acc(out, alpha, a * b)
                continue
            if all(a.is_constant() for a in u.values()):
                for alpha, a in u.items():
                    s = a * b
                    for nu, d in self._mono_product(alpha, beta).items():
                        _acc(out, nu, d * s)
                continue
            part = dict(u)
            for i in mi.word(beta):
                part = self._rmul_gen(part, i)
            for nu, d in part.items():
                _acc(out, nu, d * b)
        return out

    def _lmul_terms(self, a: Poly, v: Terms) -> Terms:
        if a.is_constant():
            s = a.constant_term()
            return {k: c * s for k, c in v.items()} if s else {}
        return self._mul_terms({self._zero_index: a}, v)

    # -- Δ and δ on monomials ---------------------------------------------
    def _coprod_mono(self, alpha) -> dict:
        hit = self._coprod.get(alpha)
        if hit is not None:
            return hit
        one = Poly.one(self.nvars)
        if not any(alpha):
            res = {(alpha, alpha): one}
        else:
            m = mi.max_index(alpha)
            prev = self._coprod_mono(mi.sub(alpha, mi.unit(self.rank, m)))
            pieces = []
            for (b, g), c in prev.items():
                # Δ(X^α') · (X_m⊗1 + 1⊗X_m), computed leg by leg
                pieces.append((self._mono_rmul_gen(b, m), {g: c}))
                pieces.append(({b: one}, self._rmul_gen({g: c}, m)))
            res = canonicalize(self, COPROD, pieces).terms
        self._coprod[alpha] = res
        return res

    def _translate_mono(self, alpha) -> dict:
        hit = self._translate.get(alpha)
        if hit is not None:
            return hit
        one = Poly.one(self.nvars)
        if not any(alpha):
            res = {(alpha, alpha): one}
        else:
            f = mi.min_index(alpha)
            ef = mi.unit(self.rank, f)
            prev = self._translate_mono(mi.sub(alpha, ef))
            sign = Poly.const(self.nvars, self.translation_sign)
            pieces = []
            # δ(X_f v) = v₋ ⊗ X_f v₊ + sign · v₋X_f ⊗ v₊
            for (b, g), c in prev.items():
                pieces.append(({b: one}, self._mul_terms({ef: one}, {g: c})))
                pieces.append((self._mono_rmul_gen(b, f), {g: c * sign}))
            res = canonicalize(self, TRANSLATE, pieces).terms
        self._translate[alpha] = res
        return res

    # -- public structure maps ----------------------------------------------
    def mul(self, u: "EnvElement", v: "EnvElement") -> "EnvElement":
        return EnvElement(self, self._mul_terms(u.terms, v.terms))

    def lmul_coeff(self, a: Poly, u: "EnvElement") -> "EnvElement":
        return EnvElement(self, self._lmul_terms(a, u.terms))

    def counit(self, u: "EnvElement") -> Poly:
        return u.terms.get(self._zero_index, Poly.zero(self.nvars))

    def coprod(self, u: "EnvElement") -> "Tensor":
        out: dict = {}
        for alpha, a in u.terms.items():
            for key, c in self._coprod_mono(alpha).items():
                _acc(out, key, c * a)
        return Tensor(self, COPROD, out)

    def translate(self, u: "EnvElement") -> "Tensor":
        out: dict = {}
        for alpha, a in u.terms.items():
            for key, c in self._translate_mono(alpha).items():
                _acc(out, key, c * a)
        return Tensor(self, TRANSLATE, out)

    def beta(self, t: "Tensor") -> "Tensor":
        """``u ⊗ v ↦ u v₁ ⊗ v₂``."""
        _require_kinds(t, TRANSLATE)
        pieces = []
        for (a, g), c in t.terms.items():
            for (g1, g2), d in self._coprod_mono(g).items():
                pieces.append((self._mono_product(a, g1), {g2: d * c}))
        return canonicalize(self, COPROD, pieces)

    def beta_inv(self, t: "Tensor") -> "Tensor":
        """``v ⊗ u ↦ v u₋ ⊗ u₊``."""
        _require_kinds(t, COPROD)
        pieces = []
        for (a, g), c in t.terms.items():
            for (e, th), d in self._translate_mono(g).items():
                pieces.append((self._mono_product(a, e), {th: d * c}))
        return canonicalize(self, TRANSLATE, pieces)

    def __repr__(self) -> str:
        return f"Envelope({self.presentation.name})"


class _EnvRing:
    def __init__(self, env: Envelope):
        self.env = env

    def const(self, c):
        return self.env.const(c)

    def variable(self, i):
        if not 0 <= i < self.env.nvars:
            raise IndexError(f"unknown variable x{i + 1} (ring has {self.env.nvars} variables)")
        return self.env.const(Poly.var(self.env.nvars, i))

    def generator(self, i):
        if not 0 <= i < self.env.rank:
            raise IndexError(f"unknown generator X{i + 1} (rank is {self.env.rank})")
        return self.env.gen(i)


class EnvElement:
    """``Σ_α X^α · a_α``; immutable."""

    __slots__ = ("env", "terms", "_hash")

    def __init__(self, env: Envelope, terms: Terms):
        self.env = env
        self.terms = terms
        self._hash = None

    @property
    def presentation(self) -> LRPresentation:
        return self.env.presentation

    def _other(self, other) -> "EnvElement":
        if isinstance(other, EnvElement):
            if other.env.presentation is not self.env.presentation:
                raise ValueError("elements of different enveloping algebras")
            return other
        if isinstance(other, (int, Fraction, Poly)):
            return self.env.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return EnvElement(self.env, out)

    __radd__ = __add__

    def __neg__(self):
        return EnvElement(self.env, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return EnvElement(self.env, {k: c * other for k, c in self.terms.items()} if other else {})
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self.env.mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self.env.mul(other, self)

    def __pow__(self, n: int):
        result = self.env.one()
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, EnvElement):
            return self.env.presentation is other.env.presentation and self.terms == other.terms
        if isinstance(other, (int, Fraction, Poly)):
            return self == self.env.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Filtration degree; ``-1`` for zero."""
        return max((sum(a) for a in self.terms), default=-1)

    def coeff(self, alpha) -> Poly:
        return self.terms.get(tuple(alpha), Poly.zero(self.env.nvars))

    def right_mul(self, a: Poly) -> "EnvElement":
        """``u · ι_A(a)``; a coordinate operation in this normal form."""
        return EnvElement(self.env, {k: c * a for k, c in self.terms.items() if c * a})

    def top(self) -> "EnvElement":
        d = self.degree()
        return EnvElement(self.env, {k: c for k, c in self.terms.items() if sum(k) == d})

    def __str__(self) -> str:
        return render_env(self)

    def __repr__(self) -> str:
        return f"EnvElement({render_env(self)!r})"


# ---------------------------------------------------------------------------
# tensors


def _require_kinds(t: "Tensor", kinds) -> None:
    if t.kinds != kinds:
        raise ValueError(f"expected tensor with balancing {kinds}, got {t.kinds}")


class Tensor:
    """Canonical element of a multi-leg tensor product over ``A``."""

    __slots__ = ("env", "kinds", "terms")

    def __init__(self, env: Envelope, kinds: tuple[str, ...], terms: dict):
        self.env = env
        self.kinds = tuple(kinds)
        self.terms = {k: c for k, c in terms.items() if c}

    @property
    def flavor(self) -> str:
        for name, kinds in FLAVORS.items():
            if kinds == self.kinds:
                return name
        return "".join(self.kinds)

    @property
    def legs(self) -> int:
        return len(self.kinds) + 1

    def level(self) -> int:
        return max((sum(map(sum, k)) for k in self.terms), default=-1)

    def _check(self, other: "Tensor") -> None:
        if not isinstance(other, Tensor) or other.kinds != self.kinds:
            raise ValueError("tensor flavors differ")

    def __add__(self, other: "Tensor") -> "Tensor":
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _acc(out, k, c)
        return Tensor(self.env, self.kinds, out)

    def __neg__(self) -> "Tensor":
        return Tensor(self.env, self.kinds, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, Tensor) and self.kinds == other.kinds and self.terms == other.terms

    def __hash__(self):
        return hash((self.kinds, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        return render_tensor(self)

    def __repr__(self) -> str:
        return f"Tensor[{self.flavor}]({render_tensor(self)!r})"


def canonicalize(env: Envelope, kinds: Sequence[str], pieces: Iterable) -> Tensor:
    """Reduce a sum of leg-wise products to canonical form.

    Each piece is a sequence of term dicts, one per leg.  Coefficients are
    pushed rightwards across each boundary using its balancing rule.
    """
    kinds = tuple(kinds)
    out: dict = {}
    for legs in pieces:
        state = {(a,): c for a, c in legs[0].items() if c}
        for i, kind in enumerate(kinds):
            nxt = legs[i + 1]
            new: dict = {}
            for prefix, c in state.items():
                if kind == "r":
                    pushed = {b: d * c for b, d in nxt.items()}
                else:
                    pushed = env._lmul_terms(c, nxt)
                for b, d in pushed.items():
                    _acc(new, prefix + (b,), d)
            state = new
        for k, c in state.items():
            _acc(out, k, c)
    return Tensor(env, kinds, out)


def tensor_from_elements(kinds: Sequence[str], legs: Sequence[EnvElement]) -> Tensor:
    env = legs[0].env
    return canonicalize(env, kinds, [[u.terms for u in legs]])


# ---------------------------------------------------------------------------
# module-level operations


def lmul_coeff(a: Poly, u: EnvElement) -> EnvElement:
    """``ι_A(a) · u`` in normal form."""
    return u.env.lmul_coeff(a, u)


def env_mul(u: EnvElement, v: EnvElement) -> EnvElement:
    return u.env.mul(u, v)


def counit_env(u: EnvElement) -> Poly:
    return u.env.counit(u)


def coprod_env(u: EnvElement) -> Tensor:
    return u.env.coprod(u)


def translate(u: EnvElement) -> Tensor:
    return u.env.translate(u)


def beta(t: Tensor) -> Tensor:
    return t.env.beta(t)


def beta_inv(t: Tensor) -> Tensor:
    return t.env.beta_inv(t)


def truncate_theta(u: EnvElement, n: int) -> EnvElement:
    """Drop the terms of degree above ``n``."""
    if n < 0:
        raise ValueError("truncation level must be nonnegative")
    return EnvElement(u.env, {a: c for a, c in u.terms.items() if sum(a) <= n})


class DualBasisFunctional:
    """``λ_α``: reads the right coefficient of ``X^α``."""

    __slots__ = ("alpha",)

    def __init__(self, alpha):
        self.alpha = tuple(alpha)

    def __call__(self, u: EnvElement) -> Poly:
        return u.coeff(self.alpha)

    def __repr__(self) -> str:
        return f"λ{mi.render(self.alpha)}"


def dual_basis(env: Envelope, n: int) -> list[tuple[tuple, DualBasisFunctional]]:
    if n < 0:
        raise ValueError("level must be nonnegative")
    return [(a, DualBasisFunctional(a)) for a in mi.up_to(env.rank, n)]


def binomial_coprod(env: Envelope, alpha) -> Tensor:
    """Closed form ``Σ_β C(α,β) X^β ⊗ X^{α-β}``, used as an independent check."""
    out = {}
    for b in mi.sub_indices(tuple(alpha)):
        out[(b, mi.sub(alpha, b))] = Poly.const(env.nvars, mi.binomial(alpha, b))
    return Tensor(env, COPROD, out)


# ---------------------------------------------------------------------------
# rendering


def _gen_part(alpha) -> str:
    return render_monomial(alpha, "X")


def _coefficient_pieces(head: str, c: Poly) -> list[tuple[Fraction, str]]:
    """Pieces for ``head`` times the right coefficient ``c``."""
    terms = c.sorted_terms()
    if not head:
        return [(q, render_monomial(e)) for e, q in terms]
    if len(terms) == 1:
        e, q = terms[0]
        mono = render_monomial(e)
        return [(q, f"{head}*{mono}" if mono else head)]
    inner = render_signed_terms([(q, render_monomial(e)) for e, q in terms])
    return [(Fraction(1), f"{head}*({inner})")]


def render_env(u: EnvElement) -> str:
    pieces: list = []
    for alpha in sorted(u.terms, key=mi.order_key, reverse=True):
        pieces.extend(_coefficient_pieces(_gen_part(alpha), u.terms[alpha]))
    return render_signed_terms(pieces)


def _tensor_key(key):
    return (-sum(map(sum, key)), sum(key[0])) + tuple(
        t for a in key for t in (-sum(a),) + tuple(-x for x in a)
    )


def render_tensor(t: Tensor) -> str:
    return render_signed_terms(_tensor_pieces(t))


def _tensor_pieces(t: Tensor):
    out = []
    for key in sorted(t.terms, key=_tensor_key):
        c = t.terms[key]
        heads = [_gen_part(a) or "1" for a in key]
        last = _gen_part(key[-1])
        prefix = "⊗".join(heads[:-1]) + "⊗"
        if last:
            out.extend((q, prefix + body) for q, body in _coefficient_pieces(last, c))
            continue
        terms = c.sorted_terms()
        if len(terms) == 1:
            e, q = terms[0]
            out.append((q, prefix + (render_monomial(e) or "1")))
        else:
            inner = render_signed_terms([(q, render_monomial(e)) for e, q in terms])
            out.append((Fraction(1), prefix + f"({inner})"))
    return out


def graded_rank(env: Envelope, n: int) -> tuple[int, bool]:
    """Rank of ``FⁿU/Fⁿ⁻¹U`` read off from all generator words of length ``n``.

    Returns the number of distinct leading monomials and whether every word
    has leading part equal to its sorted monomial with coefficient 1, so
    that the leading parts form an ``A``-basis of the graded piece.
    """
    one = Poly.one(env.nvars)
    tops = set()
    clean = True
    for w in product(range(env.rank), repeat=n):
        u = env.one()
        for i in w:
            u = EnvElement(env, env._rmul_gen(u.terms, i))
        top = u.top().terms if n else u.terms
        expected = tuple(w.count(i) for i in range(env.rank))
        if top != {expected: one}:
            clean = False
        tops.update(top)
    return len(tops), clean
