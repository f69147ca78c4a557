"""Representative-level finite dual ``U°`` and the map ``ζ: U° → U*``.

A :class:`URep` is ``M = A^d`` with right action fixed by matrices ``R_i``:
on coordinate columns ``c``, ``c·X_i = R_i c - ω_i(c)``.  A :class:`DualRep`
``(M, φ, m)`` stands for the class of ``φ ⊗ m``.  Classes are never compared
directly; every comparison goes through ``ζ`` at a finite precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from . import multiindex as mi
from .enveloping import EnvElement, Envelope
from .expr import ParseError, parse_poly
from .functionals import FunctionalOracle, TruncatedFunctional, truncate, vanishing_level
from .lie_rinehart import schema_errors
from .linalg import identity, kron, mat_mul, rank, transpose
from .poly import Poly

REP_SCHEMA = {
    "type": "object",
    "required": ["rank", "matrices"],
    "properties": {
        "name": {"type": "string"},
        "rank": {"type": "integer", "minimum": 1},
        "matrices": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {"type": "array", "items": {"type": "string"}},
            },
        },
    },
    "additionalProperties": False,
}


class RepError(ValueError):
    def __init__(self, kind: str, message: str, indices: tuple[int, ...] = ()):
        self.kind = kind
        self.indices = indices
        super().__init__(f"{kind}: {message}")


def _zero_matrix(d: int, k: int):
    return [[Poly.zero(k)] * d for _ in range(d)]


@dataclass(frozen=True, eq=False)
class URep:
    env: Envelope
    rank: int
    matrices: tuple[tuple[tuple[Poly, ...], ...], ...]
    name: str = "M"

    def rho(self, i: int, c: Sequence[Poly]) -> list[Poly]:
        """``c·X_i`` in coordinates."""
        D = self.env.presentation.anchor[i]
        R = self.matrices[i]
        k = self.env.nvars
        out = []
        for p in range(self.rank):
            s = Poly.zero(k)
            for q in range(self.rank):
                if R[p][q] and c[q]:
                    s = s + R[p][q] * c[q]
            out.append(s - D(c[p]))
        return out

    def act_monomial(self, m: Sequence[Poly], alpha) -> list[Poly]:
        """``m·X^α``; ``X_1`` factors act first."""
        m = list(m)
        for i in mi.word(tuple(alpha)):
            m = self.rho(i, m)
        return m

    def act(self, m: Sequence[Poly], u: EnvElement) -> list[Poly]:
        k = self.env.nvars
        out = [Poly.zero(k)] * self.rank
        for alpha, a in u.terms.items():
            v = self.act_monomial(m, alpha)
            out = [o + x * a for o, x in zip(out, v)]
        return out

    def matrix_list(self) -> list[list[list[Poly]]]:
        return [[list(row) for row in R] for R in self.matrices]


def make_rep(env: Envelope, matrices, name: str = "M", validate: bool = True) -> URep:
    r = env.rank
    mats = tuple(tuple(tuple(row) for row in R) for R in matrices)
    if len(mats) != r:
        raise RepError("schema", f"expected {r} matrices, got {len(mats)}")
    d = len(mats[0]) if mats else 0
    for i, R in enumerate(mats):
        if len(R) != d or any(len(row) != d for row in R):
            raise RepError("schema", f"matrix {i + 1} is not {d}x{d}", (i + 1,))
    rep = URep(env, d, mats, name)
    if validate:
        check_flatness(rep)
    return rep


def flatness_defect(rep: URep, i: int, j: int):
    """``R_jR_i - R_iR_j - ω_j(R_i) + ω_i(R_j) - Σ_m c^m_{ij} R_m``."""
    env = rep.env
    anchor = env.presentation.anchor
    Ri = [list(r) for r in rep.matrices[i]]
    Rj = [list(r) for r in rep.matrices[j]]
    A = mat_mul(Rj, Ri)
    B = mat_mul(Ri, Rj)
    d = rep.rank
    out = []
    for p in range(d):
        row = []
        for q in range(d):
            v = A[p][q] - B[p][q] - anchor[j](Ri[p][q]) + anchor[i](Rj[p][q])
            for mm, c in enumerate(env.presentation.structure[i][j]):
                if c:
                    v = v - c * rep.matrices[mm][p][q]
            row.append(v)
        out.append(row)
    return out


def check_flatness(rep: URep) -> None:
    for i, j in combinations(range(rep.env.rank), 2):
        defect = flatness_defect(rep, i, j)
        if any(v for row in defect for v in row):
            raise RepError(
                "flatness",
                f"action matrices violate the bracket relation for (X{i + 1},X{j + 1})",
                (i + 1, j + 1),
            )


def load_rep(document: dict, env: Envelope, name: str | None = None) -> URep:
    errors = schema_errors(document, REP_SCHEMA)
    if errors:
        raise RepError("schema", "; ".join(errors))
    d = document["rank"]
    k = env.nvars
    mats = []
    if len(document["matrices"]) != env.rank:
        raise RepError("schema", f"/matrices: expected {env.rank} matrices, got {len(document['matrices'])}")
    for i, M in enumerate(document["matrices"]):
        if len(M) != d or any(len(row) != d for row in M):
            raise RepError("schema", f"/matrices/{i}: expected a {d}x{d} matrix", (i + 1,))
        rows = []
        for p, row in enumerate(M):
            cur = []
            for q, text in enumerate(row):
                try:
                    cur.append(parse_poly(text, k))
                except ParseError as exc:
                    raise RepError("schema", f"/matrices/{i}/{p}/{q}: {exc}") from None
            rows.append(cur)
        mats.append(rows)
    return make_rep(env, mats, name or document.get("name", "M"))


def trivial_rep(env: Envelope) -> URep:
    return make_rep(env, [_zero_matrix(1, env.nvars) for _ in range(env.rank)], "trivial", validate=False)


def tensor_rep(M: URep, N: URep) -> URep:
    """``(m⊗n)·X_i = m·X_i ⊗ n + m ⊗ n·X_i``: matrices ``R⊗I + I⊗R'``."""
    k = M.env.nvars
    IM, IN = identity(M.rank, k), identity(N.rank, k)
    mats = []
    for RM, RN in zip(M.matrices, N.matrices):
        A = kron([list(r) for r in RM], IN)
        B = kron(IM, [list(r) for r in RN])
        mats.append([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)])
    return make_rep(M.env, mats, f"({M.name}⊗{N.name})")


def dual_rep(M: URep) -> URep:
    """Matrices ``-R_iᵀ`` acting on row coordinates of ``M*``."""
    mats = [[[-v for v in row] for row in transpose([list(r) for r in R])] for R in M.matrices]
    return make_rep(M.env, mats, f"{M.name}*")


def direct_sum(M: URep, N: URep) -> URep:
    k = M.env.nvars
    d = M.rank + N.rank
    mats = []
    for RM, RN in zip(M.matrices, N.matrices):
        R = _zero_matrix(d, k)
        for p in range(M.rank):
            for q in range(M.rank):
                R[p][q] = RM[p][q]
        for p in range(N.rank):
            for q in range(N.rank):
                R[M.rank + p][M.rank + q] = RN[p][q]
        mats.append(R)
    return make_rep(M.env, mats, f"({M.name}⊕{N.name})", validate=False)


@dataclass(frozen=True, eq=False)
class DualRep:
    rep: URep
    phi: tuple[Poly, ...]
    m: tuple[Poly, ...]

    def __post_init__(self):
        if len(self.phi) != self.rep.rank or len(self.m) != self.rep.rank:
            raise ValueError("φ and m must have the rank of the representation")

    @property
    def env(self) -> Envelope:
        return self.rep.env

    def __repr__(self) -> str:
        phi = ", ".join(map(str, self.phi))
        m = ", ".join(map(str, self.m))
        return f"DualRep({self.rep.name}; φ=[{phi}]; m=[{m}])"


def dual_element(rep: URep, phi: Sequence[Poly], m: Sequence[Poly]) -> DualRep:
    return DualRep(rep, tuple(phi), tuple(m))


def eta(env: Envelope, a_prime: Poly, a: Poly) -> DualRep:
    """``η(a'⊗a)``: the trivial module with ``φ = a'·`` and ``m = a``."""
    return DualRep(trivial_rep(env), (a_prime,), (a,))


def _dot(p: Sequence[Poly], v: Sequence[Poly], k: int) -> Poly:
    s = Poly.zero(k)
    for a, b in zip(p, v):
        if a and b:
            s = s + a * b
    return s


def zeta(w: DualRep) -> FunctionalOracle:
    """``ζ(φ⊗m)(X^α) = φ(m·X^α)``."""
    rep, k = w.rep, w.env.nvars
    cache: dict = {}

    def vec(alpha):
        hit = cache.get(alpha)
        if hit is None:
            last = mi.max_index(alpha)
            if last < 0:
                hit = list(w.m)
            else:
                hit = rep.rho(last, vec(mi.sub(alpha, mi.unit(len(alpha), last))))
            cache[alpha] = hit
        return hit

    return FunctionalOracle(w.env, lambda alpha: _dot(w.phi, vec(alpha), k), f"zeta({w})")


def zeta_truncated(w: DualRep, n: int) -> TruncatedFunctional:
    return truncate(zeta(w), n)


def dualrep_counit(w: DualRep) -> Poly:
    return _dot(w.phi, w.m, w.env.nvars)


def dualrep_mul(w1: DualRep, w2: DualRep) -> DualRep:
    rep = tensor_rep(w1.rep, w2.rep)
    phi = [a * b for a in w1.phi for b in w2.phi]
    m = [a * b for a in w1.m for b in w2.m]
    return DualRep(rep, tuple(phi), tuple(m))


def dualrep_coprod(w: DualRep) -> list[tuple[DualRep, DualRep]]:
    """``Σ_q (φ⊗e_q) ⊗ (e_q*⊗m)`` over the coordinate basis."""
    k = w.env.nvars
    d = w.rep.rank
    out = []
    for q in range(d):
        e = tuple(Poly.one(k) if t == q else Poly.zero(k) for t in range(d))
        out.append((DualRep(w.rep, w.phi, e), DualRep(w.rep, e, w.m)))
    return out


def dualrep_antipode(w: DualRep) -> DualRep:
    """``φ⊗m ↦ ev_m ⊗ φ`` on the dual module."""
    return DualRep(dual_rep(w.rep), w.m, w.phi)


def normalize(w: DualRep) -> DualRep:
    """``w - η(ε°(w)⊗1)``, realized on ``M ⊕ A``; lies in ``ker ε°``."""
    env = w.env
    k = env.nvars
    rep = direct_sum(w.rep, trivial_rep(env))
    return DualRep(rep, w.phi + (-dualrep_counit(w),), w.m + (Poly.one(k),))


def product(ws: Sequence[DualRep]) -> DualRep:
    out = ws[0]
    for w in ws[1:]:
        out = dualrep_mul(out, w)
    return out


def k_order_check(ws: Sequence[DualRep], n: int | None = None) -> bool:
    """``ζ(w₁···w_l)`` lies in ``F_lU*`` once each factor is normalized into ``ker ε°``.

    The product is truncated at precision ``n`` (default ``l``).
    """
    if not ws:
        raise ValueError("need at least one factor")
    length = len(ws)
    n = length if n is None else n
    f = zeta_truncated(product([normalize(w) for w in ws]), n)
    return vanishing_level(f) >= min(length, n + 1)


def density_diagnostic(ws: Sequence[DualRep], n: int, env: Envelope | None = None) -> tuple[int, int]:
    """Rank over ``Frac(A)`` of the truncated ``ζ(w)`` inside ``(FⁿU)*``."""
    if n < 0:
        raise ValueError("level must be nonnegative")
    if env is None:
        if not ws:
            raise ValueError("an empty family needs an explicit envelope")
        env = ws[0].env
    monos = mi.up_to(env.rank, n)
    full = len(monos)
    if not ws:
        return 0, full
    rows = []
    for w in ws:
        f = zeta_truncated(w, n)
        rows.append([f.value(a) for a in monos])
    return rank(rows, env.nvars), full
