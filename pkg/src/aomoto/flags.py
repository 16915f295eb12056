"""Generic flags near infinity, the chamber stratification and opposites."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import qq
from .arrangement import INF, Arrangement, ArrangementError, Flat, is_essential
from .chambers import Chamber, enumerate_chambers, infinity_span, separating_set, sign_key
from .lp import cone_implicit_equalities, strict_interior_point

MAX_ATTEMPTS = 64


class FlagError(RuntimeError):
    pass


@dataclass(frozen=True)
class FlagLevel:
    """``F^k = base + span(directions)``; the direction order fixes the orientation."""

    base: tuple[Fraction, ...]
    directions: tuple[tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.directions)

    def point(self, t: Sequence) -> tuple[Fraction, ...]:
        out = list(self.base)
        for c, d in zip(t, self.directions):
            if c:
                out = [x + c * y for x, y in zip(out, d)]
        return tuple(out)

    def restrict(self, normal: Sequence, offset) -> tuple[tuple[Fraction, ...], Fraction]:
        """The equation ``normal.x = offset`` pulled back to ``F^k`` coordinates."""
        return tuple(qq.dot(normal, d) for d in self.directions), Fraction(offset) - qq.dot(normal, self.base)

    def homogeneous_columns(self) -> list[tuple[Fraction, ...]]:
        return [(Fraction(1),) + tuple(self.base)] + [(Fraction(0),) + tuple(d) for d in self.directions]

    def to_json(self) -> dict:
        return {"base": [str(x) for x in self.base], "basis": [[str(x) for x in d] for d in self.directions]}


@dataclass(frozen=True)
class Flag:
    levels: tuple[FlagLevel, ...]
    seed: int | None = None

    @property
    def ambient_dim(self) -> int:
        return len(self.levels) - 1

    def __getitem__(self, k: int) -> FlagLevel:
        return self.levels[k]

    @classmethod
    def from_levels(cls, levels: Sequence[tuple[Sequence, Sequence[Sequence]]], seed=None) -> Flag:
        out = []
        for base, dirs in levels:
            out.append(FlagLevel(tuple(Fraction(x) for x in base),
                                 tuple(tuple(Fraction(x) for x in d) for d in dirs)))
        return cls(tuple(out), seed)

    def to_json(self) -> dict:
        return {"seed": self.seed, "levels": [L.to_json() for L in self.levels]}


def _standard_level(ell: int) -> FlagLevel:
    return FlagLevel((Fraction(0),) * ell,
                     tuple(tuple(Fraction(int(i == j)) for j in range(ell)) for i in range(ell)))


# ---------------------------------------------------------------------------
# sections


def generic_section(A: Arrangement, F: Flag, k: int) -> Arrangement:
    """``A cap F^k`` written in the coordinates of ``F^k``."""
    if not 0 <= k <= A.dim:
        raise ValueError(f"level {k} outside 0..{A.dim}")
    if k == 0:
        # a point off every hyperplane: the empty arrangement in R^0
        return Arrangement(0, ())
    L = F[k]
    rows = []
    for i, h in enumerate(A.hyperplanes):
        a, b = L.restrict(h.normal, h.offset)
        if not any(a):
            raise FlagError(f"F^{k} is parallel to or contained in hyperplane {i + 1}")
        rows.append(list(a) + [b])
    try:
        return Arrangement.from_equations(k, rows)
    except ArrangementError as e:
        raise FlagError(f"section at level {k} is degenerate: {e}") from None


def _section_vertices(A: Arrangement, L: FlagLevel) -> list[tuple[Fraction, ...]]:
    """Points of ``L_0(A cap F)`` in the coordinates of ``F``.

    Computed directly from the restricted equations so that it also works for
    non-generic candidates (duplicates are harmless here).
    """
    k = L.dim
    eqs = [L.restrict(h.normal, h.offset) for h in A.hyperplanes]
    eqs = [(a, b) for a, b in eqs if any(a)]
    pts = set()
    from itertools import combinations

    for S in combinations(range(len(eqs)), k):
        M = [eqs[i][0] for i in S]
        if qq.rank(M) < k:
            continue
        p = qq.solve(M, [eqs[i][1] for i in S])
        if p is not None:
            pts.add(p)
    return sorted(pts)


# ---------------------------------------------------------------------------
# genericity / nearness


@dataclass
class LevelCheck:
    level: int
    generic: bool = True
    near: bool = True
    nested: bool = True
    witness: str = ""


@dataclass
class FlagReport:
    levels: list[LevelCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.generic and c.near and c.nested for c in self.levels)

    def failures(self) -> list[LevelCheck]:
        return [c for c in self.levels if not (c.generic and c.near and c.nested)]

    def to_json(self) -> dict:
        return {"ok": self.ok, "levels": [c.__dict__ for c in self.levels]}


def _genericity_witness(A: Arrangement, L: FlagLevel) -> Flat | None:
    """First projective flat meeting ``F-bar`` in the wrong dimension."""
    cols = L.homogeneous_columns()
    k = L.dim
    for X in A.projective_flats[1:]:
        hs = [A.hom(i) for i in sorted(X.support)]
        r = qq.rank(hs)
        prod = [[qq.dot(h, c) for c in cols] for h in hs]
        if qq.rank(prod) != min(r, k + 1):
            return X
    return None


def _hyperplane_in(upper: FlagLevel, lower: FlagLevel):
    """``lower`` inside ``upper`` as ``(nu, c)`` with ``lower = {t : nu.t = c}``.

    Returns ``None`` when ``lower`` is not an affine hyperplane of ``upper``.
    """
    D = list(upper.directions)
    k = len(D)
    cols = [list(r) for r in zip(*D)] if D else []

    def coords(v):
        return qq.solve(cols, list(v)) if cols else None

    t0 = coords([x - y for x, y in zip(lower.base, upper.base)])
    if t0 is None:
        return None
    dirs = []
    for d in lower.directions:
        td = qq.solve(cols, list(d))
        if td is None:
            return None
        dirs.append(td)
    if qq.rank(dirs) != len(dirs) or len(dirs) != k - 1:
        return None
    nu = qq.nullspace(dirs, k) if dirs else [tuple(Fraction(1) for _ in range(k))]
    if k == 1:
        nu = [(Fraction(1),)]
    nu = nu[0]
    return nu, qq.dot(nu, t0)


def verify_flag(A: Arrangement, F: Flag) -> FlagReport:
    """Per-level genericity, nesting and nearness, with witnesses on failure."""
    ell = A.dim
    report = FlagReport()
    if F.ambient_dim != ell:
        report.levels.append(LevelCheck(ell, nested=False, witness="flag has the wrong number of levels"))
        return report
    for k in range(ell + 1):
        L = F[k]
        chk = LevelCheck(k)
        if L.dim != k or (L.directions and qq.rank(L.directions) != k):
            chk.nested = False
            chk.witness = f"F^{k} has dimension {L.dim} instead of {k}"
            report.levels.append(chk)
            continue
        X = _genericity_witness(A, L)
        if X is not None:
            chk.generic = False
            chk.witness = f"flat {X.label()} meets F^{k} in the wrong dimension"
        if k < ell:
            hp = _hyperplane_in(F[k + 1], L)
            if hp is None:
                chk.nested = False
                chk.witness = f"F^{k} is not a hyperplane of F^{k + 1}"
            elif chk.generic:
                nu, c = hp
                verts = _section_vertices(A, F[k + 1])
                pos = [v for v in verts if qq.dot(nu, v) > c]
                neg = [v for v in verts if qq.dot(nu, v) < c]
                on = [v for v in verts if qq.dot(nu, v) == c]
                if (pos and neg) or on:
                    chk.near = False
                    a = (on or pos)[0]
                    b = on[0] if on else neg[0]
                    chk.witness = (f"F^{k} separates section vertices "
                                   f"{[str(x) for x in a]} and {[str(x) for x in b]} of level {k + 1}")
        report.levels.append(chk)
    return report


def build_flag(A: Arrangement, seed: int = 0) -> Flag:
    """A generic flag near infinity, deterministic in ``(A, seed)``.

    Built top-down: inside ``F^k`` pick a random integer normal ``nu`` and
    place ``F^{k-1} = {nu.t = c}`` with ``c`` beyond every vertex of the
    section, then check genericity exactly.
    """
    if not is_essential(A):
        raise ArrangementError("flags near infinity need an essential arrangement")
    ell = A.dim
    rng = random.Random(seed)
    levels: list[FlagLevel] = [None] * (ell + 1)  # type: ignore[list-item]
    levels[ell] = _standard_level(ell)
    for k in range(ell, 0, -1):
        upper = levels[k]
        verts = _section_vertices(A, upper)
        for _ in range(MAX_ATTEMPTS):
            nu = [rng.randint(-9, 9) for _ in range(k)]
            if not any(nu):
                continue
            c = 2 * max((abs(qq.dot(nu, v)) for v in verts), default=Fraction(0)) + 1
            n2 = sum(x * x for x in nu)
            t0 = [Fraction(c * x, n2) for x in nu]
            tdirs = qq.nullspace([nu], k)
            cand = FlagLevel(upper.point(t0), tuple(_combine(upper, d) for d in tdirs))
            if _genericity_witness(A, cand) is None:
                levels[k - 1] = cand
                break
        else:
            raise FlagError(f"no generic hyperplane of F^{k} found in {MAX_ATTEMPTS} attempts (seed {seed})")
    F = Flag(tuple(levels), seed)
    rep = verify_flag(A, F)
    if not rep.ok:
        raise FlagError(f"constructed flag failed verification: {rep.failures()[0].witness}")
    return F


def _combine(L: FlagLevel, t: Sequence) -> tuple[Fraction, ...]:
    out = [Fraction(0)] * len(L.base)
    for c, d in zip(t, L.directions):
        if c:
            out = [x + c * y for x, y in zip(out, d)]
    return tuple(out)


# ---------------------------------------------------------------------------
# stratification


def section_system(A: Arrangement, L: FlagLevel, signs: Sequence[int]):
    """Rows ``(g_i, h_i)`` with ``C cap F = {t : g_i.t > h_i}``."""
    G, h = [], []
    for s, hp in zip(signs, A.hyperplanes):
        a, b = L.restrict(hp.normal, hp.offset)
        G.append([s * x for x in a])
        h.append(s * b)
    return G, h


def meets_level(A: Arrangement, L: FlagLevel, signs: Sequence[int]):
    """A point of ``C cap F^k`` in level coordinates, or ``None``."""
    if L.dim == 0:
        return () if A.sign_vector(L.base) == tuple(signs) else None
    G, h = section_system(A, L, signs)
    return strict_interior_point(G, h)


def bounded_on_level(A: Arrangement, L: FlagLevel, signs: Sequence[int]) -> bool:
    if L.dim == 0:
        return True
    G, _ = section_system(A, L, signs)
    implicit, _ = cone_implicit_equalities(G)
    return not qq.nullspace([G[i] for i in sorted(implicit)], L.dim)


@dataclass
class Stratification:
    arrangement: Arrangement
    flag: Flag
    chambers: list[Chamber]
    ch: list[list[Chamber]]
    bch: list[list[Chamber]]
    uch: list[list[Chamber]]
    level_of: dict[tuple[int, ...], int]
    section_points: dict[tuple[int, ...], tuple[Fraction, ...]]
    iota: list[dict[tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)

    def chamber(self, signs: Sequence[int]) -> Chamber:
        return self._by_signs[tuple(signs)]

    def __post_init__(self):
        self._by_signs = {C.signs: C for C in self.chambers}

    def counts(self) -> dict[str, list[int]]:
        return {"ch": [len(x) for x in self.ch], "bch": [len(x) for x in self.bch], "uch": [len(x) for x in self.uch]}

    def to_json(self) -> dict:
        def labels(cs):
            return [C.label() for C in cs]

        return {
            "ch": [labels(x) for x in self.ch],
            "bch": [labels(x) for x in self.bch],
            "uch": [labels(x) for x in self.uch],
            "iota": [{_lab(a): _lab(b) for a, b in m.items()} for m in self.iota],
            "counts": self.counts(),
        }


def _lab(signs) -> str:
    return "".join("+" if s > 0 else "-" for s in signs)


def stratify(A: Arrangement, F: Flag, chambers: Sequence[Chamber] | None = None) -> Stratification:
    """Split chambers by the first flag level they meet and by boundedness there."""
    ell = A.dim
    if chambers is None:
        chambers = enumerate_chambers(A)
    ch = [[] for _ in range(ell + 1)]
    bch = [[] for _ in range(ell + 1)]
    uch = [[] for _ in range(ell + 1)]
    level_of = {}
    pts = {}
    for C in chambers:
        for k in range(ell + 1):
            p = meets_level(A, F[k], C.signs)
            if p is not None:
                break
        else:  # pragma: no cover - F^ell is the ambient space
            raise FlagError(f"chamber {C.label()} meets no flag level")
        level_of[C.signs] = k
        pts[C.signs] = p
        ch[k].append(C)
        (bch if bounded_on_level(A, F[k], C.signs) else uch)[k].append(C)
    for lst in ch + bch + uch:
        lst.sort(key=lambda C: sign_key(C.signs))
    st = Stratification(A, F, list(chambers), ch, bch, uch, level_of, pts)
    for k in range(ell):
        st.iota.append({C.signs: opposite_chamber(A, C, st).signs for C in bch[k]})
    return st


def opposite_signs(A: Arrangement, C: Chamber) -> tuple[int, ...]:
    if C.bounded:
        raise ArrangementError(f"bounded chamber {C.label()} has no opposite")
    X = infinity_span(A, C)
    return tuple(s if i in X.support else -s for i, s in enumerate(C.signs))


def opposite_chamber(A: Arrangement, C: Chamber, st: Stratification | None = None) -> Chamber:
    """``C^v``: flip the signs of the hyperplanes not containing ``X(C)``."""
    t = opposite_signs(A, C)
    if st is not None:
        if t not in st._by_signs:
            raise ArrangementError(f"opposite {_lab(t)} of {C.label()} is not a chamber")
        return st.chamber(t)
    from .chambers import make_chamber

    return make_chamber(A, t)


def section_opposite_signs(A: Arrangement, F: Flag, C: Chamber, k: int) -> tuple[int, ...]:
    """Opposite of ``C cap F^k`` computed inside the section arrangement."""
    from .chambers import make_chamber

    S = generic_section(A, F, k)
    D = make_chamber(S, C.signs)
    return opposite_signs(S, D)


# ---------------------------------------------------------------------------
# walls


@dataclass(frozen=True)
class WallData:
    chamber: tuple[int, ...]
    wall: frozenset[int]
    wall1: frozenset[int]
    wall2: frozenset[int]
    enclosing: tuple[tuple[int, int], ...]  # (index, sign) of C-tilde on Wall_1

    def to_json(self) -> dict:
        return {
            "chamber": _lab(self.chamber),
            "wall": sorted(i + 1 for i in self.wall),
            "wall1": sorted(i + 1 for i in self.wall1),
            "wall2": sorted(i + 1 for i in self.wall2),
            "enclosing": {str(i + 1): ("+" if s > 0 else "-") for i, s in self.enclosing},
        }


def facet_hyperplanes(A: Arrangement, L: FlagLevel, signs: Sequence[int]) -> frozenset[int]:
    """Indices whose hyperplane supports a facet of ``C-bar cap F``."""
    if L.dim == 0:
        return frozenset()
    G, h = section_system(A, L, signs)
    out = set()
    for i in range(len(G)):
        rest = [j for j in range(len(G)) if j != i]
        p = strict_interior_point([G[j] for j in rest], [h[j] for j in rest], [G[i]], [h[i]])
        if p is not None:
            out.add(i)
    return frozenset(out)


def walls_classify(A: Arrangement, F: Flag, C: Chamber) -> WallData:
    ell = A.dim
    wall = facet_hyperplanes(A, F[ell - 1], C.signs)
    X = infinity_span(A, C)
    w1 = frozenset(i for i in wall if i in X.support)
    w2 = wall - w1
    enclosing = tuple((i, C.signs[i]) for i in sorted(w1))
    return WallData(C.signs, wall, w1, w2, enclosing)


def is_inside_walls(A: Arrangement, D: Chamber, C: Chamber, wd: WallData) -> bool:
    inside = not (separating_set(C, D) & wd.wall1)
    if inside and not D.bounded:
        XD, XC = infinity_span(A, D), infinity_span(A, C)
        if not XC.support <= XD.support:
            raise ArrangementError(f"X({D.label()}) is not contained in X({C.label()})")
    return inside


def flag_for(A: Arrangement, seed: int = 0, tries: int = 8) -> Flag:
    """``build_flag`` with a few fallback seeds."""
    last = None
    for j in range(tries):
        try:
            return build_flag(A, seed + j * 7919)
        except FlagError as e:
            last = e
    raise last  # type: ignore[misc]


__all__ = [
    "Flag", "FlagLevel", "FlagError", "FlagReport", "Stratification", "WallData", "INF",
    "build_flag", "verify_flag", "stratify", "opposite_chamber", "walls_classify",
    "is_inside_walls", "generic_section", "section_opposite_signs",
]
