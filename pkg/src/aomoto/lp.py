"""Exact rational linear programming.

A dense two-phase tableau simplex over ``Fraction`` with Bland's rule.  It is
meant for the tiny systems that arise from chambers of desk-scale
arrangements (a handful of variables, a few dozen constraints), where exactness
matters and speed does not.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)


@dataclass(frozen=True)
class LPResult:
    status: str
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None


def _pivot(T: list[list[Fraction]], r: int, c: int) -> None:
    row = T[r]
    p = row[c]
    if p != 1:
        row[:] = [v / p for v in row]
    for i, other in enumerate(T):
        if i != r:
            f = other[c]
            if f:
                other[:] = [a - f * b for a, b in zip(other, row)]


def _run(T: list[list[Fraction]], basis: list[int], ncols: int, allowed: int) -> bool:
    """Maximize the objective stored (negated) in the last row of ``T``.

    Only columns ``< allowed`` may enter.  Returns ``False`` when unbounded.
    """
    obj = T[-1]
    m = len(T) - 1
    while True:
        enter = next((j for j in range(allowed) if obj[j] < 0), None)
        if enter is None:
            return True
        best = None
        leave = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][ncols] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return False
        _pivot(T, leave, enter)
        basis[leave] = enter


def maximize(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
) -> LPResult:
    """Maximize ``c.x`` subject to ``A_ub x <= b_ub`` and ``A_eq x = b_eq``.

    All variables are free.  Inputs may be ints or Fractions.
    """
    n = len(c)
    rows = [([Fraction(v) for v in a], Fraction(b), False) for a, b in zip(A_ub, b_ub)]
    rows += [([Fraction(v) for v in a], Fraction(b), True) for a, b in zip(A_eq, b_eq)]
    m = len(rows)
    # columns: x+ (n), x- (n), slacks (one per inequality), artificials (m)
    n_slack = sum(1 for _, _, eq in rows if not eq)
    art0 = 2 * n + n_slack
    ncols = art0 + m
    T: list[list[Fraction]] = []
    basis: list[int] = []
    s = 2 * n
    for i, (a, b, eq) in enumerate(rows):
        row = [_ZERO] * (ncols + 1)
        sign = -1 if b < 0 else 1
        for j, v in enumerate(a):
            row[j] = sign * v
            row[n + j] = -sign * v
        row[ncols] = sign * b
        if not eq:
            row[s] = Fraction(sign)
            if sign > 0:
                basis.append(s)
            s += 1
        if len(basis) == i:
            row[art0 + i] = Fraction(1)
            basis.append(art0 + i)
        T.append(row)

    # phase 1: maximize -(sum of artificials)
    obj = [_ZERO] * (ncols + 1)
    for i, row in enumerate(T):
        if basis[i] >= art0:
            obj = [o - v for o, v in zip(obj, row)]
            obj[art0 + i] = _ZERO
    T.append(obj)
    _run(T, basis, ncols, art0)
    if T[-1][ncols] != 0:
        return LPResult(INFEASIBLE)
    # drive remaining artificials out of the basis
    for i in range(m):
        if basis[i] >= art0:
            j = next((j for j in range(art0) if T[i][j] != 0), None)
            if j is not None:
                _pivot(T, i, j)
                basis[i] = j
    # drop artificial columns (redundant rows keep a zero artificial in basis)
    keep = [i for i in range(m) if basis[i] < art0]
    T = [T[i][:art0] + [T[i][ncols]] for i in keep]
    basis = [basis[i] for i in keep]

    obj = [_ZERO] * (art0 + 1)
    cf = [Fraction(v) for v in c]
    for j in range(n):
        obj[j] = -cf[j]
        obj[n + j] = cf[j]
    for i, bj in enumerate(basis):
        f = obj[bj]
        if f:
            obj = [o - f * v for o, v in zip(obj, T[i])]
    T.append(obj)
    if not _run(T, basis, art0, art0):
        return LPResult(UNBOUNDED)
    vals = [_ZERO] * art0
    for i, bj in enumerate(basis):
        vals[bj] = T[i][art0]
    x = tuple(vals[j] - vals[n + j] for j in range(n))
    value = sum((cf[j] * x[j] for j in range(n)), _ZERO)
    return LPResult(OPTIMAL, x, value)


def strict_interior_point(G: Sequence[Sequence], h: Sequence, A_eq=(), b_eq=()):
    """A point with ``G x > h`` (and ``A_eq x = b_eq``), or ``None``.

    Solves ``max t`` subject to ``G x - t >= h``, ``t <= 1``.
    """
    k = len(G[0]) if G else (len(A_eq[0]) if A_eq else 0)
    A_ub = [[-Fraction(v) for v in g] + [Fraction(1)] for g in G]
    b_ub = [-Fraction(v) for v in h]
    A_ub.append([_ZERO] * k + [Fraction(1)])
    b_ub.append(Fraction(1))
    A = [list(a) + [0] for a in A_eq]
    res = maximize([0] * k + [1], A_ub, b_ub, A, b_eq)
    if res.status != OPTIMAL or res.value <= 0:
        return None
    return res.x[:k]


def cone_implicit_equalities(G: Sequence[Sequence]) -> tuple[frozenset[int], tuple[Fraction, ...]]:
    """Implicit equalities of the cone ``{v : G v >= 0}``.

    Returns the index set ``I`` of rows with ``g_i . v = 0`` on the whole cone
    together with a relative-interior point (``g_i . v > 0`` for ``i`` not in
    ``I``).  One LP: ``max sum t_i`` with ``G v >= t``, ``0 <= t <= 1``.
    """
    m = len(G)
    if m == 0:
        return frozenset(), ()
    k = len(G[0])
    A_ub = []
    b_ub = []
    for i, g in enumerate(G):
        row = [-Fraction(v) for v in g] + [_ZERO] * m
        row[k + i] = Fraction(1)
        A_ub.append(row)
        b_ub.append(_ZERO)
        cap = [_ZERO] * (k + m)
        cap[k + i] = Fraction(1)
        A_ub.append(cap)
        b_ub.append(Fraction(1))
        floor = [_ZERO] * (k + m)
        floor[k + i] = Fraction(-1)
        A_ub.append(floor)
        b_ub.append(_ZERO)
    res = maximize([0] * k + [1] * m, A_ub, b_ub)
    assert res.status == OPTIMAL
    t = res.x[k:]
    implicit = frozenset(i for i in range(m) if t[i] == 0)
    return implicit, res.x[:k]
