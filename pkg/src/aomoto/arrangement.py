"""Real affine hyperplane arrangements and their intersection posets.

Hyperplanes are indexed ``0..n-1`` internally; the hyperplane at infinity of
the projective closure is the sentinel index ``INF``.  In homogeneous
coordinates ``(x_0, x_1, ..., x_l)`` the hyperplane ``a.x = b`` has normal
``(-b, a)`` and the hyperplane at infinity has normal ``(1, 0, ..., 0)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from . import qq

INF = -1
MAX_MATROID_SIZE = 16


class ArrangementError(ValueError):
    pass


class ResourceError(RuntimeError):
    pass


@dataclass(frozen=True)
class Hyperplane:
    """``{x : normal . x = offset}`` in primitive integer form.

    Only positive rescaling is applied, so the orientation of the defining
    equation (which side is ``+``) is preserved.
    """

    normal: tuple[int, ...]
    offset: int

    @classmethod
    def from_equation(cls, normal: Sequence, offset) -> Hyperplane:
        if not any(Fraction(x) for x in normal):
            raise ArrangementError("hyperplane normal must be nonzero")
        v = qq.primitive(list(normal) + [offset])
        return cls(v[:-1], v[-1])

    def value(self, x: Sequence):
        return qq.dot(self.normal, x) - self.offset

    def side(self, x: Sequence) -> int:
        v = self.value(x)
        return (v > 0) - (v < 0)

    @property
    def homogeneous(self) -> tuple[int, ...]:
        return (-self.offset,) + self.normal

    def same_set(self, other: Hyperplane) -> bool:
        return self.homogeneous == other.homogeneous or self.homogeneous == tuple(-x for x in other.homogeneous)


@dataclass(frozen=True)
class Flat:
    """An edge of ``L(A)`` or of the projective closure.

    ``support`` is the (closed) set of hyperplanes containing the flat and may
    include ``INF``.  ``dim`` is the affine dimension for affine flats and the
    projective dimension for projective ones.  ``witness`` is a point plus
    direction basis (affine) or a basis of the homogeneous subspace
    (projective).
    """

    support: frozenset[int]
    dim: int
    projective: bool = False
    witness: tuple = field(default=(), compare=False, repr=False)

    @property
    def at_infinity(self) -> bool:
        return INF in self.support

    @property
    def hyperplanes(self) -> frozenset[int]:
        return self.support - {INF}

    def label(self) -> list:
        """1-based hyperplane labels with ``"inf"``, as used in JSON output."""
        finite = sorted(i + 1 for i in self.hyperplanes)
        return finite + (["inf"] if self.at_infinity else [])


@dataclass(frozen=True)
class Arrangement:
    dim: int
    hyperplanes: tuple[Hyperplane, ...]

    def __post_init__(self):
        for h in self.hyperplanes:
            if len(h.normal) != self.dim:
                raise ArrangementError(f"hyperplane {h} does not live in R^{self.dim}")
        for i, j in combinations(range(len(self.hyperplanes)), 2):
            if self.hyperplanes[i].same_set(self.hyperplanes[j]):
                raise ArrangementError(f"hyperplanes {i + 1} and {j + 1} coincide")

    @classmethod
    def from_equations(cls, dim: int, rows: Iterable[Sequence]) -> Arrangement:
        """Build from rows ``[a_1, ..., a_l, b]`` meaning ``a.x = b``."""
        hs = []
        for r in rows:
            r = list(r)
            if len(r) != dim + 1:
                raise ArrangementError(f"row {r} should have {dim + 1} entries")
            hs.append(Hyperplane.from_equation(r[:-1], r[-1]))
        return cls(dim, tuple(hs))

    @property
    def n(self) -> int:
        return len(self.hyperplanes)

    def __len__(self):
        return self.n

    def hom(self, i: int) -> tuple[int, ...]:
        if i == INF:
            return (1,) + (0,) * self.dim
        return self.hyperplanes[i].homogeneous

    def sign_vector(self, x: Sequence) -> tuple[int, ...]:
        return tuple(h.side(x) for h in self.hyperplanes)

    def to_rows(self) -> list[list[int]]:
        return [list(h.normal) + [h.offset] for h in self.hyperplanes]

    # -- closure operators -------------------------------------------------

    def projective_closure(self, S: Iterable[int]) -> frozenset[int]:
        S = list(S)
        rows = [self.hom(i) for i in S]
        r = qq.rank(rows) if rows else 0
        out = set(S)
        for j in list(range(self.n)) + [INF]:
            if j not in out and rows and qq.rank(rows + [self.hom(j)]) == r:
                out.add(j)
        return frozenset(out)

    def affine_meet(self, S: Iterable[int]) -> Flat | None:
        """The affine flat ``cap_{i in S} H_i``, or ``None`` when empty."""
        S = sorted(set(S))
        if not S:
            return Flat(frozenset(), self.dim, False, ((Fraction(0),) * self.dim, tuple(_unit_basis(self.dim))))
        A = [self.hyperplanes[i].normal for i in S]
        b = [self.hyperplanes[i].offset for i in S]
        p = qq.solve(A, b)
        if p is None:
            return None
        dirs = qq.nullspace(A, self.dim)
        support = frozenset(j for j in range(self.n) if self.hyperplanes[j].value(p) == 0 and all(
            qq.dot(self.hyperplanes[j].normal, d) == 0 for d in dirs))
        return Flat(support, len(dirs), False, (p, tuple(dirs)))

    def rank_of(self, S: Iterable[int]) -> int:
        rows = [self.hyperplanes[i].normal for i in S]
        return qq.rank(rows) if rows else 0

    # -- posets ------------------------------------------------------------

    @cached_property
    def projective_flats(self) -> tuple[Flat, ...]:
        """All nonempty flats of the projective closure (ambient space included)."""
        ell = self.dim
        top = Flat(frozenset(), ell, True, tuple(_unit_basis(ell + 1)))
        found: dict[frozenset, Flat] = {}
        frontier = []
        for i in list(range(self.n)) + [INF]:
            S = self.projective_closure([i])
            if S not in found:
                found[S] = self._projective_flat(S)
                frontier.append(S)
        while frontier:
            nxt = []
            for S in frontier:
                for j in list(range(self.n)) + [INF]:
                    if j in S:
                        continue
                    T = self.projective_closure(S | {j})
                    if T in found:
                        continue
                    X = self._projective_flat(T)
                    if X.dim < 0:
                        continue
                    found[T] = X
                    nxt.append(T)
            frontier = nxt
        flats = sorted(found.values(), key=lambda X: (-X.dim, sorted(X.support)))
        return (top,) + tuple(flats)

    def _projective_flat(self, S: frozenset[int]) -> Flat:
        rows = [self.hom(i) for i in S]
        basis = qq.nullspace(rows, self.dim + 1)
        return Flat(S, len(basis) - 1, True, tuple(basis))

    @cached_property
    def affine_flats(self) -> tuple[Flat, ...]:
        """``L(A)``: the ambient space plus all nonempty affine intersections."""
        out = [self.affine_meet(())]
        for X in self.projective_flats[1:]:
            if not X.at_infinity:
                out.append(self.affine_meet(X.support))
        return tuple(out)

    @cached_property
    def mobius(self) -> dict[frozenset, int]:
        """Moebius function ``mu(R^l, X)`` on ``L(A)`` keyed by support."""
        flats = sorted(self.affine_flats, key=lambda X: len(X.support))
        mu: dict[frozenset, int] = {}
        for X in flats:
            if not X.support:
                mu[X.support] = 1
            else:
                mu[X.support] = -sum(m for S, m in mu.items() if S < X.support)
        return mu

    def vertices(self) -> list[tuple[Fraction, ...]]:
        """Points of ``L_0(A)``."""
        return [X.witness[0] for X in self.affine_flats if X.dim == 0]


def _unit_basis(n: int):
    return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]


def intersection_poset(A: Arrangement) -> tuple[tuple[Flat, ...], tuple[Flat, ...]]:
    return A.affine_flats, A.projective_flats


def is_essential(A: Arrangement) -> bool:
    if A.dim == 0:
        return True
    return any(X.dim == 0 for X in A.affine_flats)


def betti_euler(A: Arrangement) -> tuple[tuple[int, ...], int]:
    """Betti numbers of the complexified complement and its Euler characteristic.

    ``b_k`` sums ``|mu(X)|`` over flats of codimension ``k``.
    """
    b = [0] * (A.dim + 1)
    for X in A.affine_flats:
        b[A.dim - X.dim] += abs(A.mobius[X.support])
    chi = sum((-1) ** k * bk for k, bk in enumerate(b))
    return tuple(b), chi


# ---------------------------------------------------------------------------
# matroids


def circuits(vectors: Sequence[Sequence]) -> list[frozenset[int]]:
    """Minimal linearly dependent subsets of ``vectors`` (by index)."""
    m = len(vectors)
    if m > MAX_MATROID_SIZE:
        raise ResourceError(f"circuit enumeration capped at {MAX_MATROID_SIZE} elements, got {m}")
    r = qq.rank(vectors) if vectors else 0
    found: list[frozenset[int]] = []
    for size in range(1, r + 2):
        for S in combinations(range(m), size):
            fs = frozenset(S)
            if any(C <= fs for C in found):
                continue
            if qq.rank([vectors[i] for i in S]) < size:
                found.append(fs)
    return found


def matroid_is_indecomposable(vectors: Sequence[Sequence]) -> bool:
    """Connectivity of the linear matroid on ``vectors``.

    Elements are joined when they lie on a common circuit; a single element
    counts as connected.
    """
    m = len(vectors)
    if m == 0:
        raise ArrangementError("matroid on an empty ground set")
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for C in circuits(vectors):
        it = iter(C)
        first = find(next(it))
        for e in it:
            parent[find(e)] = first
    return len({find(i) for i in range(m)}) == 1


def is_dense(A: Arrangement, X: Flat) -> bool:
    if not X.support:
        return False
    support = sorted(X.support)
    return matroid_is_indecomposable([A.hom(i) for i in support])


def dense_edges_matroid(A: Arrangement, where: str = "all") -> list[Flat]:
    """Dense flats of the projective closure, by matroid connectivity."""
    if where not in ("all", "at_infinity"):
        raise ValueError(f"unknown selector {where!r}")
    out = []
    for X in A.projective_flats[1:]:
        if where == "at_infinity" and not X.at_infinity:
            continue
        if is_dense(A, X):
            out.append(X)
    return out
