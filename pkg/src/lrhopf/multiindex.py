"""Multi-index helpers shared by the PBW basis, functional tables and jets."""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial, prod

MultiIndex = tuple[int, ...]


def total(a: MultiIndex) -> int:
    return sum(a)


def add(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    return tuple(x - y for x, y in zip(a, b))


def unit(r: int, i: int) -> MultiIndex:
    return tuple(1 if t == i else 0 for t in range(r))


def leq(a: MultiIndex, b: MultiIndex) -> bool:
    return all(x <= y for x, y in zip(a, b))


def max_index(a: MultiIndex) -> int:
    """Largest position with a nonzero entry, ``-1`` for the zero index."""
    for i in range(len(a) - 1, -1, -1):
        if a[i]:
            return i
    return -1


def min_index(a: MultiIndex) -> int:
    for i, x in enumerate(a):
        if x:
            return i
    return -1


def order_key(a: MultiIndex):
    """Graded order: lower degree first, then lexicographically descending."""
    return (sum(a), tuple(-x for x in a))


def binomial(a: MultiIndex, b: MultiIndex) -> int:
    return prod(comb(x, y) for x, y in zip(a, b))


def mfactorial(a: MultiIndex) -> int:
    return prod(factorial(x) for x in a)


@lru_cache(maxsize=None)
def of_degree(r: int, d: int) -> tuple[MultiIndex, ...]:
    """All ``α ∈ ℕʳ`` with ``|α| = d`` in canonical order."""
    if r == 1:
        return ((d,),)
    out = []
    for first in range(d, -1, -1):
        for rest in of_degree(r - 1, d - first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def up_to(r: int, n: int) -> tuple[MultiIndex, ...]:
    """All ``α`` with ``|α| <= n`` in canonical order."""
    out: list[MultiIndex] = []
    for d in range(n + 1):
        out.extend(of_degree(r, d))
    return tuple(out)


def sub_indices(a: MultiIndex):
    """All ``b <= a`` componentwise."""
    if not a:
        yield ()
        return
    for head in range(a[0] + 1):
        for rest in sub_indices(a[1:]):
            yield (head,) + rest


def word(a: MultiIndex) -> list[int]:
    """Generator sequence of the ordered monomial ``X^a``."""
    out = []
    for i, x in enumerate(a):
        out.extend([i] * x)
    return out


def render(a: MultiIndex) -> str:
    return "[" + ",".join(str(x) for x in a) + "]"
