"""The Orlik-Solomon algebra in its NBC basis and the Aomoto complex."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Any, Sequence

from .arrangement import INF, Arrangement, Flat
from .chambers import dense_edges
from .linalg import CohomologyGroup, Matrix, complex_cohomology
from .rings import RingSpec

Monomial = tuple[int, ...]


def _perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (entries distinct)."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


class OSAlgebra:
    """NBC basis and straightening for one arrangement (input order)."""

    def __init__(self, A: Arrangement):
        self.A = A
        self._meet_cache: dict[Monomial, frozenset[int] | None] = {}
        self._reduce_cache: dict[tuple[Monomial, str], dict[Monomial, int]] = {}
        self.nbc = self._nbc_basis()
        self.index = [{S: j for j, S in enumerate(B)} for B in self.nbc]

    # closure of the affine flat cut out by S; None if empty
    def support(self, S: Monomial) -> frozenset[int] | None:
        if S not in self._meet_cache:
            X = self.A.affine_meet(S)
            self._meet_cache[S] = None if X is None else X.support
        return self._meet_cache[S]

    def independent(self, S: Monomial) -> bool:
        return self.A.rank_of(S) == len(S)

    def _violation(self, S: Monomial) -> list[tuple[int, int]]:
        """Pairs ``(j, c)`` with ``c < S[j]`` in the closure of ``S[j:]``."""
        out = []
        for j in range(len(S)):
            sup = self.support(S[j:])
            c = min(sup)
            if c < S[j]:
                out.append((j, c))
        return out

    def is_nbc(self, S: Monomial) -> bool:
        S = tuple(sorted(S))
        if self.support(S) is None or not self.independent(S):
            return False
        return not self._violation(S)

    def _nbc_basis(self) -> list[list[Monomial]]:
        A = self.A
        levels: list[list[Monomial]] = [[()]]
        for k in range(1, A.dim + 1):
            nxt = []
            # NBC sets are closed under dropping the first element, so extend
            # on the left
            for S in levels[-1]:
                lo = S[0] if S else A.n
                for i in range(lo):
                    T = (i,) + S
                    if self.is_nbc(T):
                        nxt.append(T)
            nxt.sort()
            if not nxt:
                break
            levels.append(nxt)
        return levels

    def broken_circuits(self, S: Monomial) -> list[Monomial]:
        """Circuits ``C`` whose broken part ``C[1:]`` lies in the sorted set ``S``.

        Ordered by the broken part.
        """
        if self.support(S) is None:
            return []
        out = set()
        for j, c in self._violation(S):
            T = (c,) + S[j:]
            # shrink to a circuit through c (c stays: it is the unique small element)
            C = list(T)
            for e in T[1:]:
                trial = [x for x in C if x != e]
                if self.A.rank_of(trial) < len(trial):
                    C = trial
            out.add(tuple(C))
        return sorted(out, key=lambda C: C[1:])

    def reduce(self, monomial: Sequence[int], strategy: str = "smallest") -> dict[Monomial, int]:
        """``e_{i_1} ... e_{i_k}`` as an integer combination of NBC monomials."""
        if len(set(monomial)) != len(monomial):
            return {}
        sign = _perm_sign(monomial)
        S = tuple(sorted(monomial))
        return {T: sign * c for T, c in self._reduce_sorted(S, strategy).items()}

    def _reduce_sorted(self, S: Monomial, strategy: str) -> dict[Monomial, int]:
        key = (S, strategy)
        if key in self._reduce_cache:
            return self._reduce_cache[key]
        if self.support(S) is None or not self.independent(S):
            res: dict[Monomial, int] = {}
        else:
            bcs = self.broken_circuits(S)
            if not bcs:
                res = {S: 1}
            else:
                C = bcs[0] if strategy == "smallest" else bcs[-1]
                B = C[1:]
                rest = tuple(x for x in S if x not in B)
                outer = _perm_sign(B + rest)
                res = {}
                # e_B = -sum_{q>=1} (-1)^q e_{C \ c_q}
                for q in range(1, len(C)):
                    term = C[:q] + C[q + 1:] + rest
                    coeff = -((-1) ** q) * outer
                    for T, v in self.reduce(term, strategy).items():
                        res[T] = res.get(T, 0) + coeff * v
                res = {T: v for T, v in res.items() if v}
        self._reduce_cache[key] = res
        return res

    def betti(self) -> tuple[int, ...]:
        return tuple(len(B) for B in self.nbc)


@lru_cache(maxsize=64)
def os_algebra(A: Arrangement) -> OSAlgebra:
    return OSAlgebra(A)


def nbc_basis(A: Arrangement) -> list[list[Monomial]]:
    return os_algebra(A).nbc


def reduce_to_nbc(monomial: Sequence[int], A: Arrangement, strategy: str = "smallest") -> dict[Monomial, int]:
    return os_algebra(A).reduce(tuple(monomial), strategy)


@dataclass(frozen=True)
class WeightVector:
    ring: RingSpec
    values: tuple

    @classmethod
    def of(cls, ring: RingSpec, values: Sequence[Any]) -> WeightVector:
        return cls(ring, tuple(ring(v) for v in values))

    @property
    def infinity(self):
        total = self.ring.zero
        for v in self.values:
            total = total + v
        return -total

    def __getitem__(self, i: int):
        return self.infinity if i == INF else self.values[i]

    def __len__(self):
        return len(self.values)

    def sum_over(self, indices) -> Any:
        total = self.ring.zero
        for i in indices:
            total = total + self[i]
        return total

    def to_json(self) -> dict:
        return {"ring": str(self.ring), "lambda": [self.ring.format_element(v) for v in self.values]}


def lambda_flat(w: WeightVector, X: Flat):
    return w.sum_over(sorted(X.support))


def aomoto_coefficients(A: Arrangement) -> list[list[dict[int, dict[Monomial, int]]]]:
    """``coeff[k][col][i]``: reduction of ``e_i e_S`` for ``S = NBC_k[col]``."""
    O = os_algebra(A)
    out = []
    for k in range(len(O.nbc) - 1):
        cols = []
        for S in O.nbc[k]:
            cols.append({i: O.reduce((i,) + S) for i in range(A.n) if i not in S})
        out.append(cols)
    return out


def aomoto_matrices(A: Arrangement, w: WeightVector) -> list[Matrix]:
    """Matrices of ``omega_lambda ^`` in NBC bases (rows: degree k+1, cols: degree k)."""
    if len(w) != A.n:
        raise ValueError(f"{len(w)} weights for {A.n} hyperplanes")
    O = os_algebra(A)
    R = w.ring
    mats = []
    for k, cols in enumerate(aomoto_coefficients(A)):
        rows = len(O.nbc[k + 1])
        data = [[R.zero] * len(cols) for _ in range(rows)]
        for j, red in enumerate(cols):
            for i, comb in red.items():
                for T, c in comb.items():
                    r = O.index[k + 1][T]
                    data[r][j] = data[r][j] + R(c) * w.values[i]
        mats.append(Matrix.from_rows(R, data, len(cols)))
    return mats


def aomoto_cohomology(A: Arrangement, w: WeightVector, mode: str = "full", **kwargs) -> list[CohomologyGroup]:
    """Cohomology of the Aomoto complex.

    ``full`` computes it directly (fields and Z).  ``certificate`` goes
    through the chamber complex and only succeeds when every restricted
    block has a unit determinant.
    """
    if mode == "full":
        dims = [len(B) for B in os_algebra(A).nbc]
        dims += [0] * (A.dim + 1 - len(dims))
        mats = aomoto_matrices(A, w)
        while len(mats) < len(dims) - 1:
            k = len(mats)
            mats.append(Matrix.zeros(w.ring, dims[k + 1], dims[k]))
        return complex_cohomology(mats, w.ring, dims)
    if mode == "certificate":
        from .chamber_complex import certificate_cohomology

        return certificate_cohomology(A, w, **kwargs).groups
    raise ValueError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class UnitCheck:
    ok: bool
    witnesses: tuple[tuple[Flat, Any], ...]
    tested: tuple[tuple[Flat, Any], ...]

    def to_json(self) -> dict:
        def fmt(pairs):
            return [{"flat": X.label(), "dim": X.dim, "lambda": _fmt(v)} for X, v in pairs]

        return {"ok": self.ok, "witnesses": fmt(self.witnesses), "tested": fmt(self.tested)}


def _fmt(v):
    from .rings import ModInt

    if isinstance(v, ModInt):
        return int(v)
    if isinstance(v, int):
        return v
    return str(v)


def check_cdo_units(A: Arrangement, w: WeightVector, p: int = 0) -> UnitCheck:
    """Is ``lambda_X`` a unit for every dense edge at infinity of dim ``>= p``?"""
    tested = []
    bad = []
    for X in dense_edges(A, "at_infinity"):
        if X.dim < p:
            continue
        v = lambda_flat(w, X)
        tested.append((X, v))
        if not w.ring.is_unit(v):
            bad.append((X, v))
    return UnitCheck(not bad, tuple(bad), tuple(tested))


def nonzero_on_dense_edges(A: Arrangement, w: WeightVector) -> bool:
    """``lambda_X != 0`` for every dense edge of the projective closure."""
    return all(not w.ring.is_zero(lambda_flat(w, X)) for X in dense_edges(A, "all"))


def all_monomials(A: Arrangement, k: int):
    return combinations(range(A.n), k)
