"""Exact matrix algebra over the supported coefficient rings."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Any, Sequence

from .rings import INTEGERS, INTEGERS_MOD, RATIONALS, RingSpec, ZZ, parse_ring_spec


class ComplexError(ValueError):
    """Raised when a sequence of matrices is not a cochain complex."""


@dataclass(frozen=True)
class Matrix:
    """A ``rows x cols`` matrix with entries canonical in ``ring``.

    Coboundaries act on column vectors: ``delta^k`` has shape
    ``(rank C^{k+1}, rank C^k)``.
    """

    ring: RingSpec
    rows: int
    cols: int
    data: tuple[tuple[Any, ...], ...]

    @classmethod
    def from_rows(cls, ring: RingSpec, rows: Sequence[Sequence], cols: int | None = None) -> Matrix:
        data = tuple(tuple(ring(x) for x in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(r) != cols for r in data):
            raise ValueError("ragged matrix")
        return cls(ring, len(data), cols, data)

    @classmethod
    def zeros(cls, ring: RingSpec, rows: int, cols: int) -> Matrix:
        z = ring.zero
        return cls(ring, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, ring: RingSpec, n: int) -> Matrix:
        z, o = ring.zero, ring.one
        return cls(ring, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        z = self.ring.zero
        cols_b = list(zip(*other.data)) if other.rows else [()] * other.cols
        out = []
        for r in self.data:
            row = []
            for c in cols_b:
                acc = z
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return Matrix(self.ring, self.rows, other.cols, tuple(out))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def T(self) -> Matrix:
        data = tuple(zip(*self.data)) if self.rows else tuple(() for _ in range(self.cols))
        return Matrix(self.ring, self.cols, self.rows, data)

    def is_zero(self) -> bool:
        return not any(x for r in self.data for x in r)

    def tolist(self) -> list[list]:
        return [list(r) for r in self.data]

    def to_json(self) -> dict:
        return {
            "ring": str(self.ring),
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[self.ring.format_element(x) for x in r] for r in self.data],
        }

    @classmethod
    def from_json(cls, obj: dict) -> Matrix:
        ring = parse_ring_spec(obj["ring"])
        return cls.from_rows(ring, obj["entries"], obj.get("cols"))


@dataclass(frozen=True)
class CohomologyGroup:
    """Isomorphism class ``R^free_rank (+) torsion`` of one cohomology group.

    ``torsion_invariants`` is only populated over Z.  When the class was
    obtained from a unit-determinant certificate rather than computed,
    ``vanishing_certificate`` carries the witness.
    """

    ring: RingSpec
    free_rank: int
    torsion_invariants: tuple[int, ...] = ()
    vanishing_certificate: Any = field(default=None, compare=False)

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion_invariants

    def to_json(self) -> dict:
        out = {"ring": str(self.ring), "free_rank": self.free_rank, "torsion": list(self.torsion_invariants)}
        if self.vanishing_certificate is not None:
            out["certificate"] = self.vanishing_certificate
        return out


# ---------------------------------------------------------------------------
# Smith normal form over Z


def smith_normal_form(M: Matrix, transforms: bool = True):
    """Return ``(U, D, V)`` with ``U M V = D`` over Z.

    ``D`` is diagonal with ``d_1 | d_2 | ...`` and nonnegative entries; ``U``
    and ``V`` are unimodular.  Pivots are the entry of least absolute value,
    ties broken by (row, col).  With ``transforms=False`` the returned ``U``
    and ``V`` are ``None``.
    """
    if M.ring.kind != INTEGERS:
        raise ValueError("Smith normal form is computed over Z only")
    m, n = M.shape
    A = [list(r) for r in M.data]
    U = [[int(i == j) for j in range(m)] for i in range(m)] if transforms else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if transforms else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        if V is not None:
            for r in V:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        if U is not None:
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for r in A:
            r[dst] += q * r[src]
        if V is not None:
            for r in V:
                r[dst] += q * r[src]

    def min_entry(t, cells):
        best = None
        for i, j in cells:
            a = A[i][j]
            if a and (best is None or abs(a) < best[0]):
                best = (abs(a), i, j)
        return best

    for t in range(min(m, n)):
        best = min_entry(t, ((i, j) for i in range(t, m) for j in range(t, n)))
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    clean = clean and A[t][j] == 0
            if not clean:
                cells = [(i, t) for i in range(t, m)] + [(t, j) for j in range(t + 1, n)]
                _, i, j = min_entry(t, cells)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            if U is not None:
                U[t] = [-a for a in U[t]]

    D = Matrix.from_rows(ZZ, A, n)
    if not transforms:
        return None, D, None
    return Matrix.from_rows(ZZ, U, m), D, Matrix.from_rows(ZZ, V, n)


def invariant_factors(M: Matrix) -> tuple[int, ...]:
    """Nonzero diagonal entries of the Smith form of an integer matrix."""
    _, D, _ = smith_normal_form(M, transforms=False)
    return tuple(D[i, i] for i in range(min(D.shape)) if D[i, i])


# ---------------------------------------------------------------------------
# fields


def row_echelon(M: Matrix) -> tuple[list[list], list[int]]:
    """Reduced row echelon form over a field; returns (rows, pivot columns)."""
    if not M.ring.is_field:
        raise ValueError(f"{M.ring} is not a field")
    A = [list(r) for r in M.data]
    m, n = M.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = M.ring.one / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A, pivots


def rank(M: Matrix) -> int:
    if M.ring.kind == INTEGERS:
        return len(invariant_factors(M))
    return len(row_echelon(M)[1])


def rank_kernel(M: Matrix) -> tuple[int, list[tuple]]:
    """Rank and a kernel basis of a matrix over a field."""
    A, pivots = row_echelon(M)
    ring = M.ring
    free = [c for c in range(M.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [ring.zero] * M.cols
        v[f] = ring.one
        for r, pc in enumerate(pivots):
            v[pc] = -A[r][f]
        basis.append(tuple(v))
    return len(pivots), basis


# ---------------------------------------------------------------------------
# determinants


def _bareiss(A: list[list[int]]) -> int:
    n = len(A)
    A = [list(r) for r in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            p = next((i for i in range(k + 1, n) if A[i][k]), None)
            if p is None:
                return 0
            A[k], A[p] = A[p], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1] if n else 1


def laplace_determinant(rows: Sequence[Sequence], zero, one):
    """Cofactor expansion for any commutative ring, skipping zero entries."""
    n = len(rows)

    @lru_cache(maxsize=None)
    def minor(r: int, cols: tuple[int, ...]):
        if r == n:
            return one
        acc = zero
        for pos, c in enumerate(cols):
            a = rows[r][c]
            if not a:
                continue
            sub = minor(r + 1, cols[:pos] + cols[pos + 1:])
            term = a * sub
            acc = acc + term if pos % 2 == 0 else acc - term
        return acc

    return minor(0, tuple(range(n)))


def determinant(M: Matrix):
    """Exact determinant.

    Fraction-free Bareiss over Z (and via integer lifts over Z/m), Gaussian
    elimination over fields.
    """
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    ring = M.ring
    if ring.kind == INTEGERS:
        return _bareiss([list(r) for r in M.data])
    if ring.kind == INTEGERS_MOD and not ring.is_field:
        return ring(_bareiss([[ring.lift(x) for x in r] for r in M.data]))
    if ring.kind == RATIONALS:
        den = 1
        for r in M.data:
            for x in r:
                den = den * x.denominator // gcd(den, x.denominator)
        ints = [[int(x * den) for x in r] for r in M.data]
        return ring(_bareiss(ints)) / ring(den) ** M.rows
    A = [list(r) for r in M.data]
    n = M.rows
    det = ring.one
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c]), None)
        if p is None:
            return ring.zero
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det = det * A[c][c]
        inv = ring.one / A[c][c]
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] * inv
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return det


# ---------------------------------------------------------------------------
# cohomology


def check_complex(deltas: Sequence[Matrix]) -> None:
    for k in range(len(deltas) - 1):
        prod = deltas[k + 1] @ deltas[k]
        if not prod.is_zero():
            raise ComplexError(f"delta^{k + 1} . delta^{k} != 0")


def complex_cohomology(deltas: Sequence[Matrix], ring: RingSpec, dims: Sequence[int] | None = None) -> list[CohomologyGroup]:
    """Cohomology ``ker delta^k / im delta^{k-1}`` of a finite free complex.

    Over a field this is a dimension count; over Z the torsion comes from the
    Smith invariants of ``delta^{k-1}`` (the kernel of ``delta^k`` is a
    saturated sublattice, so the image's cokernel torsion is the torsion of
    cohomology).  ``dims`` gives module ranks when ``deltas`` is empty.
    """
    if not (ring.is_field or ring.kind == INTEGERS):
        raise ValueError(f"full cohomology over {ring} is not supported; use the certificate route")
    if dims is None:
        if not deltas:
            raise ValueError("module ranks required for an empty complex")
        dims = [d.cols for d in deltas] + [deltas[-1].rows]
    for k, d in enumerate(deltas):
        if d.shape != (dims[k + 1], dims[k]):
            raise ComplexError(f"delta^{k} has shape {d.shape}, expected {(dims[k + 1], dims[k])}")
    check_complex(deltas)
    ranks = []
    torsion = []
    for d in deltas:
        if ring.kind == INTEGERS:
            inv = invariant_factors(d)
            ranks.append(len(inv))
            torsion.append(tuple(x for x in inv if x > 1))
        else:
            ranks.append(rank(d))
            torsion.append(())
    out = []
    for k, c in enumerate(dims):
        r_out = ranks[k] if k < len(ranks) else 0
        r_in = ranks[k - 1] if 0 < k <= len(ranks) else 0
        tors = torsion[k - 1] if 0 < k <= len(torsion) else ()
        out.append(CohomologyGroup(ring, c - r_out - r_in, tors))
    return out
