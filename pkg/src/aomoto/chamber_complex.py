"""Chamber cochain complexes, restricted blocks and vanishing certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

import sympy

from .arrangement import Arrangement, Flat
from .chambers import Chamber, dense_edges, infinity_span, make_chamber, separating_set, sign_key
from .degree import DegreeEngine, DegreeTable
from .flags import Flag, Stratification, flag_for, generic_section, opposite_signs, stratify
from .linalg import CohomologyGroup, Matrix, complex_cohomology, determinant
from .orlik_solomon import WeightVector, lambda_flat
from .rings import CYCLOTOMIC, INTEGERS_MOD, PRIME_FIELD, RATIONALS, RingSpec


class CertificateRefused(ValueError):
    """A restricted block determinant is not a unit."""


@dataclass(frozen=True)
class LocalSystemData:
    """Rank-one local system given by chosen square roots of its monodromies."""

    ring: RingSpec
    half: tuple

    def __post_init__(self):
        if self.ring.kind not in (RATIONALS, CYCLOTOMIC, PRIME_FIELD) and not (
                self.ring.kind == INTEGERS_MOD and self.ring.is_field):
            raise ValueError(f"local systems need a field, got {self.ring}")
        for i, x in enumerate(self.half):
            if self.ring.is_zero(x):
                raise ValueError(f"half-monodromy {i + 1} is zero")

    @classmethod
    def of(cls, ring: RingSpec, values: Sequence[Any]) -> LocalSystemData:
        return cls(ring, tuple(ring(v) for v in values))

    def __len__(self):
        return len(self.half)

    @property
    def q(self) -> tuple:
        return tuple(x * x for x in self.half)

    @property
    def half_infinity(self):
        return self.ring.inverse(self._prod(self.half))

    def _prod(self, xs):
        out = self.ring.one
        for x in xs:
            out = out * x
        return out

    def q_of(self, i: int):
        from .arrangement import INF

        if i == INF:
            h = self.half_infinity
            return h * h
        return self.half[i] * self.half[i]

    def q_flat(self, X: Flat):
        return self._prod(self.q_of(i) for i in sorted(X.support))

    def delta(self, sep) -> Any:
        """``prod q_i^{1/2} - prod q_i^{-1/2}`` over ``sep``."""
        p = self._prod(self.half[i] for i in sorted(sep))
        return p - self.ring.inverse(p)

    def to_json(self) -> dict:
        return {"ring": str(self.ring), "q_sqrt": [self.ring.format_element(v) for v in self.half]}


def _lambda_sep(w: WeightVector, sep) -> Any:
    return w.sum_over(sorted(sep))


def _coefficient(coeffs, sep):
    if isinstance(coeffs, WeightVector):
        return _lambda_sep(coeffs, sep)
    return coeffs.delta(sep)


@dataclass
class BlockReport:
    level: int
    rows: list[tuple[int, ...]]
    cols: list[tuple[int, ...]]
    section_dims: list[int]
    degrees: list[list[int]]
    block: Matrix
    degree_triangular: bool
    entry_triangular: bool
    diagonal_degrees: list[int]
    expected_diagonal: list[int]
    diagonal_lambda_x: list[Any]
    det: Any
    det_is_unit: bool
    unit_witness: Any = None

    @property
    def triangular(self) -> bool:
        return self.entry_triangular

    def to_json(self) -> dict:
        R = self.block.ring
        lab = _lab
        return {
            "level": self.level,
            "ordering": [lab(s) for s in self.rows],
            "opposites": [lab(s) for s in self.cols],
            "section_dim_x": self.section_dims,
            "degrees": self.degrees,
            "block": [[R.format_element(x) for x in row] for row in self.block.data],
            "degree_triangular": self.degree_triangular,
            "triangular": self.entry_triangular,
            "diagonal": [
                {"chamber": lab(c), "opposite": lab(d), "deg": g, "lambda_x": R.format_element(v)}
                for c, d, g, v in zip(self.rows, self.cols, self.diagonal_degrees, self.diagonal_lambda_x)
            ],
            "det": R.format_element(self.det),
            "det_is_unit": self.det_is_unit,
            "unit_witness": None if self.unit_witness is None else R.format_element(self.unit_witness),
        }


def _lab(signs) -> str:
    return "".join("+" if s > 0 else "-" for s in signs)


class ChamberComplex:
    """Everything needed to assemble chamber complexes for one ``(A, F)``."""

    def __init__(self, A: Arrangement, flag: Flag | None = None, seed: int = 0,
                 chambers: Sequence[Chamber] | None = None, box_scale: int = 1):
        self.A = A
        self.flag = flag if flag is not None else flag_for(A, seed)
        self.strat: Stratification = stratify(A, self.flag, chambers)
        self.engine = DegreeEngine(self.strat, box_scale)
        self._table: DegreeTable | None = None
        self._section_x: dict[tuple[int, ...], Flat] = {}

    @property
    def degrees(self) -> DegreeTable:
        if self._table is None:
            self._table = self.engine.table()
        return self._table

    @property
    def dims(self) -> list[int]:
        return [len(c) for c in self.strat.ch]

    # -- coboundaries ------------------------------------------------------

    def coboundaries(self, coeffs) -> list[Matrix]:
        """``nabla^k``: rows ``ch^{k+1}``, columns ``ch^k``."""
        if len(coeffs) != self.A.n:
            raise ValueError(f"{len(coeffs)} coefficients for {self.A.n} hyperplanes")
        R = coeffs.ring
        st = self.strat
        T = self.degrees
        mats = []
        for k in range(self.A.dim):
            data = []
            for D in st.ch[k + 1]:
                row = []
                for C in st.ch[k]:
                    d = T.tables[k][(C.signs, D.signs)]
                    row.append(R(d) * _coefficient(coeffs, separating_set(C, D)) if d else R.zero)
                data.append(row)
            mats.append(Matrix.from_rows(R, data, len(st.ch[k])))
        return mats

    def cohomology(self, coeffs) -> list[CohomologyGroup]:
        return complex_cohomology(self.coboundaries(coeffs), coeffs.ring, self.dims)

    # -- restricted blocks -------------------------------------------------

    def section_x(self, C: Chamber) -> Flat:
        """``X(C)`` computed in the section at the level just above ``C``'s."""
        if C.signs not in self._section_x:
            k = self.strat.level_of[C.signs]
            S = generic_section(self.A, self.flag, k + 1)
            self._section_x[C.signs] = infinity_span(S, make_chamber(S, C.signs))
        return self._section_x[C.signs]

    def section_opposite(self, C: Chamber) -> tuple[int, ...]:
        k = self.strat.level_of[C.signs]
        S = generic_section(self.A, self.flag, k + 1)
        return opposite_signs(S, make_chamber(S, C.signs))

    def block_ordering(self, k: int) -> list[Chamber]:
        bch = self.strat.bch[k]
        return sorted(bch, key=lambda C: (-self.section_x(C).dim, sign_key(C.signs)))

    def restricted_block(self, coeffs, k: int) -> BlockReport:
        if not 0 <= k < self.A.dim:
            raise ValueError(f"restricted blocks exist for levels 0..{self.A.dim - 1}")
        R = coeffs.ring
        rows = self.block_ordering(k)
        iota = self.strat.iota[k]
        cols = [iota[C.signs] for C in rows]
        T = self.degrees.tables[k]
        degs = [[T[(C.signs, d)] for d in cols] for C in rows]
        data = []
        for C, drow in zip(rows, degs):
            data.append([R(g) * _coefficient(coeffs, _sep(C.signs, d)) if g else R.zero
                         for g, d in zip(drow, cols)])
        M = Matrix.from_rows(R, data, len(cols))
        m = len(rows)
        deg_tri = all(degs[i][j] == 0 for i in range(m) for j in range(i))
        ent_tri = all(R.is_zero(data[i][j]) for i in range(m) for j in range(i))
        sdims = [self.section_x(C).dim for C in rows]
        expected = [(-1) ** (k - d) for d in sdims]
        if isinstance(coeffs, WeightVector):
            lam_x = [lambda_flat(coeffs, infinity_span(self.A, C)) for C in rows]
        else:
            lam_x = [coeffs.q_flat(infinity_span(self.A, C)) for C in rows]
        det = determinant(M) if m else R.one
        unit = R.is_unit(det)
        return BlockReport(k, [C.signs for C in rows], cols, sdims, degs, M, deg_tri, ent_tri,
                           [degs[i][i] for i in range(m)], expected, lam_x, det, unit,
                           R.inverse(det) if unit else None)

    def symbolic_block_identity(self, k: int) -> tuple[bool, int, str]:
        """Check ``det = +-prod deg(C, C^v) lambda_X(C)`` with symbolic weights.

        Returns ``(holds, sign, det)`` where ``sign`` is the sign realized.
        """
        lam = sympy.symbols(f"l1:{self.A.n + 1}")
        lam_inf = -sum(lam)

        def lam_sum(idx):
            return sum((lam_inf if i < 0 else lam[i] for i in idx), sympy.Integer(0))

        rows = self.block_ordering(k)
        cols = [self.strat.iota[k][C.signs] for C in rows]
        T = self.degrees.tables[k]
        M = sympy.Matrix([[T[(C.signs, d)] * lam_sum(_sep(C.signs, d)) for d in cols] for C in rows])
        R = sympy.ring(lam, sympy.ZZ)[0]
        # rows and columns share one permutation, so the determinant is the
        # product over diagonal blocks of the strongly connected components
        factors = [M.extract(comp, comp).det(method="berkowitz") for comp in M.strongly_connected_components()]
        det = R.one
        for f in factors:
            det *= R.from_expr(sympy.expand(f)) if f != 0 else R.zero
        prod = R.one
        for C, d in zip(rows, cols):
            prod *= R.from_expr(sympy.expand(T[(C.signs, d)] * lam_sum(sorted(infinity_span(self.A, C).support))))
        text = str(sympy.Mul(*factors))
        if det == prod:
            return True, 1, text
        if det == -prod:
            return True, -1, text
        return False, 0, text


def _sep(s, t) -> frozenset[int]:
    return frozenset(i for i, (a, b) in enumerate(zip(s, t)) if a != b)


# ---------------------------------------------------------------------------
# certificates


@dataclass
class Certificate:
    ok: bool
    groups: list[CohomologyGroup]
    blocks: list[BlockReport]
    crt: list[dict] = field(default_factory=list)
    refusal: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "cohomology": [g.to_json() for g in self.groups],
            "blocks": [b.to_json() for b in self.blocks],
            "crt": self.crt,
            "refusal": self.refusal,
        }


def _crt_transcript(R: RingSpec, det) -> list[dict]:
    if R.kind not in (INTEGERS_MOD, PRIME_FIELD):
        return []
    v = R.lift(det)
    out = []
    for p, e in R.factorization:
        pe = p ** e
        r = v % pe
        unit = r % p != 0
        out.append({"modulus": pe, "det": r, "unit": unit, "inverse": pow(r, -1, pe) if unit else None})
    return out


def chamber_certificate(cx: ChamberComplex, coeffs) -> Certificate:
    """Vanishing below the top degree from unit restricted-block determinants."""
    R = coeffs.ring
    ell = cx.A.dim
    blocks = [cx.restricted_block(coeffs, k) for k in range(ell)]
    crt = []
    refusal = []
    for b in blocks:
        crt.append({"level": b.level, "factors": _crt_transcript(R, b.det)})
        if not b.det_is_unit:
            bad = [{"chamber": _lab(c), "lambda_x": R.format_element(v), "deg": g}
                   for c, v, g in zip(b.rows, b.diagonal_lambda_x, b.diagonal_degrees)
                   if not R.is_unit(v) or g == 0]
            refusal.append({"level": b.level, "det": R.format_element(b.det), "offending": bad})
    if refusal:
        return Certificate(False, [], blocks, crt, refusal)
    top = len(cx.strat.bch[ell])
    groups = []
    for k in range(ell + 1):
        cert = {"level": k, "source": "unit restricted blocks"}
        groups.append(CohomologyGroup(R, top if k == ell else 0, (), cert))
    return Certificate(True, groups, blocks, crt, [])


def certificate_cohomology(A: Arrangement, w, flag: Flag | None = None, seed: int = 0) -> Certificate:
    cert = chamber_certificate(ChamberComplex(A, flag, seed), w)
    if not cert.ok:
        raise CertificateRefused(f"restricted block determinant is not a unit: {cert.refusal}")
    return cert


def chamber_cohomology(A: Arrangement, coeffs, mode: str = "full", flag: Flag | None = None,
                       seed: int = 0) -> list[CohomologyGroup]:
    cx = ChamberComplex(A, flag, seed)
    if mode == "full":
        return cx.cohomology(coeffs)
    if mode == "certificate":
        cert = chamber_certificate(cx, coeffs)
        if not cert.ok:
            raise CertificateRefused(f"restricted block determinant is not a unit: {cert.refusal}")
        return cert.groups
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# hypotheses on local systems


def cdo_local_hypothesis(A: Arrangement, ls: LocalSystemData) -> tuple[bool, list[tuple[Flat, Any]]]:
    """``q_X != 1`` for every dense edge at infinity; returns violators."""
    bad = [(X, ls.q_flat(X)) for X in dense_edges(A, "at_infinity") if ls.q_flat(X) == ls.ring.one]
    return not bad, bad


def root_of_unity_system(lam: WeightVector, p: int) -> LocalSystemData:
    """``q_i^{1/2} = zeta_{2p}^{lambda_i}`` for weights over ``F_p``."""
    R = RingSpec(CYCLOTOMIC, 2 * p)
    return LocalSystemData(R, tuple(R.zeta(lam.ring.lift(x)) for x in lam.values))


def free_ranks(groups: Sequence[CohomologyGroup]) -> list[int]:
    return [g.free_rank for g in groups]

