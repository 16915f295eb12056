"""Small exact helpers for rational vectors (lists of Fractions)."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Vector = tuple


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    A = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        piv = A[r][c]
        if piv != 1:
            A[r] = [x / piv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(rref(rows, len(rows[0]))[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of ``{v : r . v = 0 for r in rows}``."""
    R, pivots = rref(rows, ncols) if rows else ([], [])
    basis = []
    for f in (c for c in range(ncols) if c not in pivots):
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -R[r][f]
        basis.append(tuple(v))
    return basis


def solve(A: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...] | None:
    """One solution of ``A x = b`` (free variables set to zero), or ``None``."""
    if not A:
        return None
    n = len(A[0])
    R, pivots = rref([list(r) + [y] for r, y in zip(A, b)], n + 1)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for r, pc in enumerate(pivots):
        x[pc] = R[r][n]
    return tuple(x)


def primitive(v: Sequence) -> tuple[int, ...]:
    """Positive rescaling of a rational vector to coprime integers."""
    v = [Fraction(x) for x in v]
    den = lcm(*(x.denominator for x in v)) if v else 1
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints) if g else tuple(ints)


def in_span(v: Sequence, rows: Sequence[Sequence]) -> bool:
    if not rows:
        return not any(v)
    return rank(list(rows) + [list(v)]) == rank(rows)
