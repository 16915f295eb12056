"""Chambers, recession cones and the edges they span at infinity."""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import qq
from .arrangement import INF, Arrangement, ArrangementError, Flat, dense_edges_matroid, is_essential
from .lp import cone_implicit_equalities, strict_interior_point


class DenseEdgeMismatch(RuntimeError):
    """The matroid and chamber descriptions of dense edges at infinity differ."""


@dataclass(frozen=True)
class Chamber:
    """A connected component of the complement, identified by its sign vector.

    ``span_basis`` is a basis of the linear span of the recession cone, and
    ``recession_generators`` are cone elements spanning that same subspace.
    """

    signs: tuple[int, ...]
    interior_point: tuple[Fraction, ...] = field(compare=False)
    recession_generators: tuple[tuple[Fraction, ...], ...] = field(compare=False, repr=False)
    span_basis: tuple[tuple[Fraction, ...], ...] = field(compare=False, repr=False)

    @property
    def infinity_span_dim(self) -> int:
        return len(self.span_basis) - 1

    @property
    def bounded(self) -> bool:
        return not self.span_basis

    def label(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)


def sign_key(signs: Sequence[int]) -> tuple[int, ...]:
    """Lexicographic order on sign vectors with ``+`` before ``-``."""
    return tuple(0 if s > 0 else 1 for s in signs)


def parse_signs(text: str) -> tuple[int, ...]:
    out = []
    for ch in text.replace(",", "").replace("(", "").replace(")", "").strip():
        if ch == "+":
            out.append(1)
        elif ch == "-":
            out.append(-1)
        elif not ch.isspace():
            raise ValueError(f"bad sign character {ch!r} in {text!r}")
    return tuple(out)


def _cone_rows(A: Arrangement, signs: Sequence[int]) -> list[list[int]]:
    return [[s * a for a in h.normal] for s, h in zip(signs, A.hyperplanes)]


def chamber_point(A: Arrangement, signs: Sequence[int]):
    """Interior point of the region with the given signs, or ``None``."""
    if A.dim == 0:
        return ()
    G = _cone_rows(A, signs)
    h = [s * hp.offset for s, hp in zip(signs, A.hyperplanes)]
    if not G:
        return (Fraction(0),) * A.dim
    return strict_interior_point(G, h)


def recession_data(A: Arrangement, signs: Sequence[int]):
    """``(span_basis, generators)`` of the recession cone ``{v : s_i a_i.v >= 0}``."""
    ell = A.dim
    G = _cone_rows(A, signs)
    if not G:
        basis = [tuple(Fraction(int(i == j)) for j in range(ell)) for i in range(ell)]
        return tuple(basis), tuple(basis)
    implicit, r = cone_implicit_equalities(G)
    span = qq.nullspace([G[i] for i in sorted(implicit)], ell)
    if not span:
        return (), ()
    r = tuple(Fraction(x) for x in r)
    gens = [r]
    for b in span:
        eps = Fraction(1)
        for i, g in enumerate(G):
            if i in implicit:
                continue
            gb = qq.dot(g, b)
            if gb < 0:
                eps = min(eps, qq.dot(g, r) / (2 * -gb))
        gens.append(tuple(x + eps * y for x, y in zip(r, b)))
    # r together with the perturbations spans the whole subspace; keep a basis
    keep: list[tuple[Fraction, ...]] = []
    for v in gens:
        if qq.rank(keep + [v]) > len(keep):
            keep.append(v)
    return tuple(span), tuple(keep)


def make_chamber(A: Arrangement, signs: Sequence[int], point=None) -> Chamber:
    signs = tuple(signs)
    if point is None:
        point = chamber_point(A, signs)
        if point is None:
            raise ArrangementError(f"sign vector {signs} is not realized by a chamber")
    span, gens = recession_data(A, signs)
    return Chamber(signs, tuple(point), gens, span)


def _generic_point(A: Arrangement) -> tuple[Fraction, ...]:
    # points on the moment curve avoid every hyperplane for all but finitely many t
    t = Fraction(1, 7)
    while True:
        x = tuple(t ** (j + 1) for j in range(A.dim))
        if all(h.value(x) != 0 for h in A.hyperplanes):
            return x
        t += Fraction(1, 3)


def enumerate_chambers(A: Arrangement) -> list[Chamber]:
    """All chambers, by breadth-first search across walls.

    Each neighbouring sign vector is confirmed by an exact LP.  Output is
    sorted lexicographically (``+`` before ``-``).
    """
    return list(_chambers(A))


@lru_cache(maxsize=64)
def _chambers(A: Arrangement) -> tuple[Chamber, ...]:
    x0 = _generic_point(A)
    s0 = A.sign_vector(x0)
    points = {s0: x0}
    queue = deque([s0])
    while queue:
        s = queue.popleft()
        for i in range(A.n):
            t = s[:i] + (-s[i],) + s[i + 1:]
            if t in points:
                continue
            p = chamber_point(A, t)
            if p is not None:
                points[t] = p
                queue.append(t)
    out = [make_chamber(A, s, p) for s, p in points.items()]
    out.sort(key=lambda C: sign_key(C.signs))
    return tuple(out)


def separating_set(C: Chamber, D: Chamber) -> frozenset[int]:
    if len(C.signs) != len(D.signs):
        raise ValueError("chambers of different arrangements")
    return frozenset(i for i, (a, b) in enumerate(zip(C.signs, D.signs)) if a != b)


def infinity_span(A: Arrangement, C: Chamber) -> Flat:
    """``X(C)``: the projective flat at infinity spanned by the recession cone.

    For a bounded chamber the empty flat (dim -1, empty support) is returned.
    """
    if C.bounded:
        return Flat(frozenset(), -1, True, ())
    support = {i for i, h in enumerate(A.hyperplanes) if all(qq.dot(h.normal, v) == 0 for v in C.span_basis)}
    support.add(INF)
    witness = tuple((Fraction(0),) + tuple(v) for v in C.span_basis)
    return Flat(frozenset(support), len(C.span_basis) - 1, True, witness)


def dense_edges_from_chambers(A: Arrangement, chambers: Sequence[Chamber] | None = None) -> list[Flat]:
    """``{X(C) : C unbounded}``, deduplicated and sorted like the projective poset."""
    if chambers is None:
        chambers = enumerate_chambers(A)
    seen: dict[frozenset, Flat] = {}
    for C in chambers:
        if not C.bounded:
            X = infinity_span(A, C)
            seen.setdefault(X.support, X)
    return sorted(seen.values(), key=lambda X: (-X.dim, sorted(X.support)))


def dense_edges(A: Arrangement, where: str = "all", chambers: Sequence[Chamber] | None = None) -> list[Flat]:
    """Dense edges of the projective closure.

    With ``where="at_infinity"`` on an essential arrangement, the matroid
    answer is cross-checked against the chamber description; a disagreement
    raises :class:`DenseEdgeMismatch`.
    """
    if where == "at_infinity" and is_essential(A) and chambers is None:
        return list(_checked_dense_infinity(A))
    out = dense_edges_matroid(A, where)
    if where == "at_infinity" and is_essential(A):
        _compare(out, dense_edges_from_chambers(A, chambers))
    return out


@lru_cache(maxsize=128)
def _checked_dense_infinity(A: Arrangement) -> tuple[Flat, ...]:
    out = dense_edges_matroid(A, "at_infinity")
    _compare(out, dense_edges_from_chambers(A))
    return tuple(out)


def _compare(matroid: Sequence[Flat], chambers: Sequence[Flat]) -> None:
    a = {X.support for X in matroid}
    b = {X.support for X in chambers}
    if a != b:
        raise DenseEdgeMismatch(
            f"matroid gives {[X.label() for X in matroid]}, chambers give {[X.label() for X in chambers]}")
