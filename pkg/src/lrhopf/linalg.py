"""Fraction-free elimination over ``Q[x1..xk]``.

Bareiss elimination keeps every entry a minor of the input, so each
division by the previous pivot is exact and no rational functions appear.
Pivots are chosen deterministically (first nonzero in column order).
"""

from __future__ import annotations

from typing import Sequence

from .poly import Poly

Matrix = list[list[Poly]]


def _copy(rows: Sequence[Sequence[Poly]]) -> Matrix:
    return [list(r) for r in rows]


def rank(rows: Sequence[Sequence[Poly]], nvars: int) -> int:
    """Rank over the fraction field of ``Q[x1..xk]``."""
    M = _copy(rows)
    if not M:
        return 0
    nrows, ncols = len(M), len(M[0])
    prev = Poly.one(nvars)
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, nrows) if M[i][col]), None)
        if pivot is None:
            continue
        M[r], M[pivot] = M[pivot], M[r]
        p = M[r][col]
        for i in range(r + 1, nrows):
            a = M[i][col]
            for j in range(col + 1, ncols):
                M[i][j] = (p * M[i][j] - a * M[r][j]).divexact(prev)
            M[i][col] = Poly.zero(nvars)
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def determinant(rows: Sequence[Sequence[Poly]], nvars: int) -> Poly:
    M = _copy(rows)
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return Poly.one(nvars)
    sign = 1
    prev = Poly.one(nvars)
    for k in range(n - 1):
        pivot = next((i for i in range(k, n) if M[i][k]), None)
        if pivot is None:
            return Poly.zero(nvars)
        if pivot != k:
            M[k], M[pivot] = M[pivot], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[k][k] * M[i][j] - M[i][k] * M[k][j]).divexact(prev)
        prev = M[k][k]
    return M[n - 1][n - 1] * sign


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    nvars = _nvars(A, B)
    return [
        [sum((A[i][t] * B[t][j] for t in range(len(B))), Poly.zero(nvars)) for j in range(len(B[0]))]
        for i in range(len(A))
    ]


def mat_vec(A: Matrix, v: Sequence[Poly]) -> list[Poly]:
    nvars = v[0].nvars
    return [sum((a * b for a, b in zip(row, v)), Poly.zero(nvars)) for row in A]


def identity(d: int, nvars: int) -> Matrix:
    return [[Poly.one(nvars) if i == j else Poly.zero(nvars) for j in range(d)] for i in range(d)]


def kron(A: Matrix, B: Matrix) -> Matrix:
    return [[a * b for a in ra for b in rb] for ra in A for rb in B]


def transpose(A: Matrix) -> Matrix:
    return [list(c) for c in zip(*A)]


def _nvars(*mats) -> int:
    for M in mats:
        for row in M:
            for e in row:
                return e.nvars
    raise ValueError("empty matrix")
