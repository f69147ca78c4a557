"""Lie-Rinehart algebras ``(A, L)`` with ``A = Q[x1..xk]`` and ``L`` free of rank r.

A presentation stores the anchor images ``ω(X_i)`` as polynomial vector
fields and the structure functions of ``[X_i, X_j] = Σ_m X_m c[i][j][m]``.
Indices are zero-based in Python and one-based in documents and output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterable, Sequence

import jsonschema

from .expr import ParseError, parse_poly
from .poly import Derivation, Poly

PRESENTATION_SCHEMA = {
    "type": "object",
    "required": ["variables", "rank", "anchor"],
    "properties": {
        "name": {"type": "string"},
        "description": {"type": "string"},
        "variables": {"type": "integer", "minimum": 1},
        "rank": {"type": "integer", "minimum": 1},
        "anchor": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "string"}},
        },
        "bracket": {
            "type": "object",
            "patternProperties": {
                r"^\s*\d+\s*,\s*\d+\s*$": {"type": "array", "items": {"type": "string"}}
            },
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}


class PresentationError(ValueError):
    """Rejected presentation; ``kind`` names the failed axiom."""

    def __init__(self, kind: str, message: str, indices: tuple[int, ...] = ()):
        self.kind = kind
        self.indices = indices
        super().__init__(f"{kind}: {message}")


def schema_errors(document: Any, schema: dict) -> list[str]:
    """Schema violations formatted as ``/json/pointer: message``."""
    validator = jsonschema.Draft7Validator(schema)
    out = []
    for err in sorted(validator.iter_errors(document), key=lambda e: list(e.absolute_path)):
        pointer = "/" + "/".join(str(p) for p in err.absolute_path)
        out.append(f"{pointer}: {err.message}")
    return out


@dataclass(frozen=True, eq=False)
class LRPresentation:
    nvars: int
    rank: int
    anchor: tuple[Derivation, ...]
    structure: tuple[tuple[tuple[Poly, ...], ...], ...]  # structure[i][j][m]
    name: str = "anonymous"
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def zero(self) -> Poly:
        return Poly.zero(self.nvars)

    def one(self) -> Poly:
        return Poly.one(self.nvars)

    def basis(self, i: int) -> "LElement":
        coeffs = [self.zero()] * self.rank
        coeffs[i] = self.one()
        return LElement(self, tuple(coeffs))

    def element(self, coeffs: Sequence[Poly]) -> "LElement":
        return LElement(self, tuple(coeffs))

    def bracket_basis(self, i: int, j: int) -> "LElement":
        return LElement(self, self.structure[i][j])

    def is_full_derivations(self) -> bool:
        """True when ``L = Der(A)`` with ``X_i ↦ ∂/∂x_i`` and zero brackets."""
        if self.rank != self.nvars:
            return False
        for i, D in enumerate(self.anchor):
            if D != Derivation.partial(self.nvars, i):
                return False
        return all(c.is_zero() for row in self.structure for cs in row for c in cs)

    def __repr__(self) -> str:
        return f"LRPresentation({self.name!r}, k={self.nvars}, r={self.rank})"


@dataclass(frozen=True, eq=False)
class LElement:
    """``Σ_m X_m · coeffs[m]`` in ``L``."""

    presentation: LRPresentation
    coeffs: tuple[Poly, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.presentation.rank:
            raise ValueError("LElement length must equal the rank")

    def __add__(self, other: "LElement") -> "LElement":
        return LElement(self.presentation, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "LElement") -> "LElement":
        return LElement(self.presentation, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "LElement":
        return LElement(self.presentation, tuple(-a for a in self.coeffs))

    def scale(self, a: Poly) -> "LElement":
        return LElement(self.presentation, tuple(a * c for c in self.coeffs))

    def __eq__(self, other):
        return (
            isinstance(other, LElement)
            and other.presentation is self.presentation
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def derivation(self) -> Derivation:
        """The anchor image ``ω(ξ)``."""
        pres = self.presentation
        total = Derivation([pres.zero()] * pres.nvars)
        for a, D in zip(self.coeffs, pres.anchor):
            if a:
                total = total + D.scale(a)
        return total

    def __repr__(self) -> str:
        terms = [f"X{m + 1}*({c})" for m, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


def anchor_apply(xi: LElement, a: Poly) -> Poly:
    """``ω(ξ)(a) = Σ_m ξ_m · ω(X_m)(a)``."""
    pres = xi.presentation
    total = pres.zero()
    for c, D in zip(xi.coeffs, pres.anchor):
        if c:
            total = total + c * D(a)
    return total


def bracket(xi: LElement, eta: LElement) -> LElement:
    """Bilinear extension of the basis bracket through the Leibniz rule.

    ``[a X_i, b X_j] = ab [X_i, X_j] + a X_i(b) X_j - b X_j(a) X_i``
    """
    pres = xi.presentation
    if eta.presentation is not pres:
        raise ValueError("elements belong to different presentations")
    out = [pres.zero()] * pres.rank
    for i, a in enumerate(xi.coeffs):
        if not a:
            continue
        for j, b in enumerate(eta.coeffs):
            if not b:
                continue
            ab = a * b
            if ab:
                for m, c in enumerate(pres.structure[i][j]):
                    if c:
                        out[m] = out[m] + ab * c
            out[j] = out[j] + a * pres.anchor[i](b)
            out[i] = out[i] - b * pres.anchor[j](a)
    return LElement(pres, tuple(out))


def _parse(text: str, nvars: int, where: str) -> Poly:
    try:
        return parse_poly(text, nvars)
    except ParseError as exc:
        raise PresentationError("schema", f"{where}: {exc}") from None


def build_presentation(
    nvars: int,
    rank: int,
    anchor: Iterable[Iterable[Poly]],
    brackets: dict[tuple[int, int], Sequence[Poly]] | None = None,
    name: str = "anonymous",
    validate: bool = True,
) -> LRPresentation:
    """Assemble and (by default) validate a presentation from polynomials.

    ``brackets`` maps zero-based ``(i, j)`` to ``[X_i, X_j]`` coefficients;
    the transposed entries are filled by antisymmetry.
    """
    anchor = tuple(Derivation(row) for row in anchor)
    if len(anchor) != rank:
        raise PresentationError("schema", f"anchor has {len(anchor)} rows, expected rank {rank}")
    zero = Poly.zero(nvars)
    table = [[None] * rank for _ in range(rank)]
    for (i, j), coeffs in (brackets or {}).items():
        coeffs = tuple(coeffs)
        if not (0 <= i < rank and 0 <= j < rank):
            raise PresentationError("schema", f"bracket index ({i + 1},{j + 1}) out of range", (i + 1, j + 1))
        if len(coeffs) != rank:
            raise PresentationError(
                "schema", f"bracket ({i + 1},{j + 1}) has {len(coeffs)} entries, expected {rank}", (i + 1, j + 1)
            )
        if table[i][j] is not None and table[i][j] != coeffs:
            raise PresentationError("schema", f"bracket ({i + 1},{j + 1}) given twice", (i + 1, j + 1))
        table[i][j] = coeffs
    for i in range(rank):
        for j in range(rank):
            if i == j:
                if table[i][i] is not None and any(table[i][i]):
                    raise PresentationError(
                        "antisymmetry", f"[X{i + 1},X{i + 1}] must vanish", (i + 1, i + 1)
                    )
                continue
            if table[i][j] is None and table[j][i] is not None:
                table[i][j] = tuple(-c for c in table[j][i])
            elif table[i][j] is not None and table[j][i] is not None:
                if any(a + b for a, b in zip(table[i][j], table[j][i])):
                    raise PresentationError(
                        "antisymmetry",
                        f"[X{i + 1},X{j + 1}] != -[X{j + 1},X{i + 1}]",
                        (i + 1, j + 1),
                    )
    structure = tuple(
        tuple(table[i][j] if table[i][j] is not None else (zero,) * rank for j in range(rank))
        for i in range(rank)
    )
    pres = LRPresentation(nvars, rank, anchor, structure, name)
    if validate:
        validate_presentation(pres)
    return pres


def validate_presentation(pres: LRPresentation) -> None:
    """Check anchor morphism and Jacobi on basis elements; raise on failure."""
    r = pres.rank
    for i, j in combinations(range(r), 2):
        lhs = pres.anchor[i].bracket(pres.anchor[j])
        rhs = pres.bracket_basis(i, j).derivation()
        if lhs != rhs:
            raise PresentationError(
                "anchor-morphism",
                f"ω([X{i + 1},X{j + 1}]) = {rhs} but [ω(X{i + 1}),ω(X{j + 1})] = {lhs}",
                (i + 1, j + 1),
            )
    # bilinearity and Leibniz are structural, so basis triples suffice
    for i, j, k in combinations(range(r), 3):
        X = [pres.basis(t) for t in (i, j, k)]
        total = (
            bracket(X[0], bracket(X[1], X[2]))
            + bracket(X[1], bracket(X[2], X[0]))
            + bracket(X[2], bracket(X[0], X[1]))
        )
        if not total.is_zero():
            raise PresentationError(
                "jacobi", f"Jacobi identity fails on (X{i + 1},X{j + 1},X{k + 1})", (i + 1, j + 1, k + 1)
            )


def load_presentation(document: dict, name: str | None = None) -> LRPresentation:
    """Validate a presentation JSON document and build it."""
    errors = schema_errors(document, PRESENTATION_SCHEMA)
    if errors:
        raise PresentationError("schema", "; ".join(errors))
    k, r = document["variables"], document["rank"]
    anchor_doc = document["anchor"]
    if len(anchor_doc) != r:
        raise PresentationError("schema", f"/anchor: expected {r} rows, got {len(anchor_doc)}")
    anchor = []
    for i, row in enumerate(anchor_doc):
        if len(row) != k:
            raise PresentationError("schema", f"/anchor/{i}: expected {k} entries, got {len(row)}")
        anchor.append([_parse(t, k, f"/anchor/{i}/{j}") for j, t in enumerate(row)])
    brackets = {}
    for key, row in document.get("bracket", {}).items():
        i, j = (int(s) - 1 for s in key.split(","))
        brackets[(i, j)] = [_parse(t, k, f"/bracket/{key}/{m}") for m, t in enumerate(row)]
    return build_presentation(k, r, anchor, brackets, name or document.get("name", "anonymous"))
