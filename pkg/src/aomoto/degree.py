"""Exact degrees of piecewise-linear Gauss maps on sections of chambers.

For ``C`` in ``ch^k`` and a target sign vector ``s'`` the degree is computed
on the polytope ``P = C-bar cap F^k cap box`` in the coordinates of ``F^k``:

* ``k = 0``: fixed to 1 by convention.
* ``k = 1``: ``P = [a, b]``; the field at an endpoint has the sign that points
  to the ``s'`` side of the hyperplane there (inward at box ends) and the
  degree is ``(sigma(b) - sigma(a)) / 2``.
* ``k = 2``: the boundary of ``P`` is traversed counter-clockwise.  Along an
  edge the field is represented by the edge's functional ``phi_e`` (the
  hyperplane normal turned toward ``s'``, or the inward box normal); at a
  vertex by a vector positive on every functional tight there.  The closed
  polygon of these vectors avoids the origin and its winding number is the
  degree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Sequence

from . import qq
from .arrangement import Arrangement
from .flags import FlagLevel, Stratification, _section_vertices
from .lp import strict_interior_point

MAX_DEGREE_LEVEL = 2


class DegreeError(RuntimeError):
    pass


# constraint labels: ("h", i) for hyperplane i, ("box", j, side) for t_j = side * R
Label = tuple


@dataclass
class LevelGeometry:
    """Restricted equations ``r_i . t = c_i`` of the hyperplanes on ``F^k``."""

    k: int
    normals: list[tuple[Fraction, ...]]
    offsets: list[Fraction]
    vertices: list[tuple[Fraction, ...]]
    radius: Fraction
    # half-widths of the clipping box per coordinate (all equal to radius
    # unless a line through a corner forced the last one to grow)
    widths: tuple[Fraction, ...] = ()

    def __post_init__(self):
        if not self.widths:
            self.widths = (self.radius,) * self.k

    @classmethod
    def build(cls, A: Arrangement, L: FlagLevel, box_scale: int = 1) -> LevelGeometry:
        k = L.dim
        normals, offsets = [], []
        for h in A.hyperplanes:
            a, b = L.restrict(h.normal, h.offset)
            normals.append(a)
            offsets.append(b)
        verts = _section_vertices(A, L) if k else []
        R = 2 * max((abs(x) for v in verts for x in v), default=Fraction(0)) + 1
        R *= box_scale
        geom = cls(k, normals, offsets, verts, R)
        if k == 2:
            # a line through the origin meets a corner of every square box,
            # so only the second half-width is moved
            while geom._line_through_corner():
                geom.widths = (geom.widths[0], geom.widths[1] + 1)
        return geom

    def _line_through_corner(self) -> bool:
        R1, R2 = self.widths
        corners = [(sx * R1, sy * R2) for sx in (1, -1) for sy in (1, -1)]
        return any(qq.dot(r, c) == o for r, o in zip(self.normals, self.offsets) for c in corners)

    def constraints(self, signs: Sequence[int]) -> list[tuple[tuple[Fraction, ...], Fraction, Label]]:
        """Rows ``u . t >= w`` describing ``C-bar cap box``."""
        out = []
        for i, (r, c, s) in enumerate(zip(self.normals, self.offsets, signs)):
            out.append((tuple(s * x for x in r), s * c, ("h", i)))
        for j in range(self.k):
            for side in (1, -1):
                u = tuple(Fraction(-side if m == j else 0) for m in range(self.k))
                out.append((u, -self.widths[j], ("box", j, side)))
        return out

    def inward(self, label: Label) -> tuple[Fraction, ...]:
        _, j, side = label
        return tuple(Fraction(-side if m == j else 0) for m in range(self.k))


@dataclass
class SectionPolytope:
    """``C-bar cap F^k cap box``: ordered vertices with their tight constraints.

    For ``k = 2`` vertices are counter-clockwise and ``edges[j]`` joins vertex
    ``j`` to vertex ``j + 1``.  For ``k = 1`` the vertices are ``[a, b]``.
    """

    k: int
    signs: tuple[int, ...]
    vertices: list[tuple[Fraction, ...]]
    tight: list[frozenset]
    edges: list[Label] = field(default_factory=list)


def _ccw_key(center):
    def half(v):
        return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1

    def cmp(p, q):
        a = (p[0] - center[0], p[1] - center[1])
        b = (q[0] - center[0], q[1] - center[1])
        ha, hb = half(a), half(b)
        if ha != hb:
            return ha - hb
        cr = a[0] * b[1] - a[1] * b[0]
        return -1 if cr > 0 else (1 if cr < 0 else 0)

    return cmp_to_key(cmp)


def section_polytope(geom: LevelGeometry, signs: Sequence[int]) -> SectionPolytope:
    signs = tuple(signs)
    k = geom.k
    if k == 0:
        return SectionPolytope(0, signs, [()], [frozenset()])
    rows = geom.constraints(signs)
    if k == 1:
        lo, hi = None, None
        for u, w, lab in rows:
            (x,) = u
            bound = w / x
            if x > 0 and (lo is None or bound > lo[0]):
                lo = (bound, lab)
            elif x < 0 and (hi is None or bound < hi[0]):
                hi = (bound, lab)
        if lo is None or hi is None or not lo[0] < hi[0]:
            raise DegreeError(f"empty or degenerate interval for {signs}")
        return SectionPolytope(1, signs, [(lo[0],), (hi[0],)], [frozenset([lo[1]]), frozenset([hi[1]])])
    if k != 2:
        raise DegreeError(f"degree engine supports levels up to {MAX_DEGREE_LEVEL}, got {k}")
    pts: dict[tuple, set] = {}
    for a in range(len(rows)):
        for b in range(a + 1, len(rows)):
            ua, wa, _ = rows[a]
            ub, wb, _ = rows[b]
            det = ua[0] * ub[1] - ua[1] * ub[0]
            if det == 0:
                continue
            p = ((wa * ub[1] - wb * ua[1]) / det, (ua[0] * wb - ub[0] * wa) / det)
            if p in pts:
                continue
            if all(qq.dot(u, p) >= w for u, w, _ in rows):
                pts[p] = {lab for u, w, lab in rows if qq.dot(u, p) == w}
    if len(pts) < 3:
        raise DegreeError(f"section polygon of {signs} is degenerate")
    verts = list(pts)
    center = (sum(v[0] for v in verts) / len(verts), sum(v[1] for v in verts) / len(verts))
    verts.sort(key=_ccw_key(center))
    tight = [frozenset(pts[v]) for v in verts]
    edges = []
    m = len(verts)
    for j in range(m):
        common = tight[j] & tight[(j + 1) % m]
        if len(common) != 1:
            raise DegreeError(f"cannot identify edge {j} of the polygon of {signs}: {sorted(common)}")
        edges.append(next(iter(common)))
    return SectionPolytope(2, signs, verts, tight, edges)


# ---------------------------------------------------------------------------
# winding numbers


def winding_number(loop: Sequence[Sequence[Fraction]]) -> int:
    """Winding number of the closed polygon ``loop`` around the origin.

    Half-open crossing rule; the origin must not lie on the polygon.
    """
    wn = 0
    m = len(loop)
    for j in range(m):
        a = loop[j]
        b = loop[(j + 1) % m]
        cross = a[0] * b[1] - a[1] * b[0]
        if a[1] <= 0:
            if b[1] > 0 and cross > 0:
                wn += 1
        elif b[1] <= 0 and cross < 0:
            wn -= 1
    return wn


def _sign(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class Perturbation:
    """Randomized but admissible choices of the PL field (stability checks)."""

    seed: int


def _functional(geom: LevelGeometry, label: Label, target: Sequence[int]) -> tuple[Fraction, ...]:
    if label[0] == "h":
        i = label[1]
        return tuple(target[i] * x for x in geom.normals[i])
    return geom.inward(label)


def degree(geom: LevelGeometry, poly: SectionPolytope, target: Sequence[int],
           perturb: Perturbation | None = None) -> int:
    """Degree of the field directed to the sign vector ``target`` on ``poly``."""
    k = poly.k
    if k == 0:
        return 1
    if k == 1:
        sig = []
        for lab in (next(iter(poly.tight[0])), next(iter(poly.tight[1]))):
            (phi,) = _functional(geom, lab, target)
            if phi == 0:
                raise DegreeError(f"field vanishes at constraint {lab}")
            sig.append(_sign(phi))
        return (sig[1] - sig[0]) // 2
    rng = random.Random(perturb.seed) if perturb else None
    m = len(poly.vertices)
    loop = []
    for j in range(m):
        phis = [_functional(geom, lab, target) for lab in sorted(poly.tight[j])]
        prev = _functional(geom, poly.edges[j - 1], target)
        nxt = _functional(geom, poly.edges[j], target)
        loop.append(_vertex_vector(prev, nxt, phis, rng))
        loop.append(_edge_vector(nxt, rng))
    return winding_number(loop)


def _vertex_vector(prev, nxt, phis, rng) -> tuple[Fraction, ...]:
    alpha = Fraction(rng.randint(1, 9), rng.randint(1, 9)) if rng else Fraction(1)
    beta = Fraction(rng.randint(1, 9), rng.randint(1, 9)) if rng else Fraction(1)
    u = qq.solve([prev, nxt], [alpha, beta])
    if u is not None and all(qq.dot(p, u) > 0 for p in phis):
        return u
    h = [Fraction(rng.randint(1, 9)) if rng else Fraction(1) for _ in phis]
    u = strict_interior_point(phis, h)
    if u is None:
        raise DegreeError("no admissible field direction at a polygon vertex")
    return tuple(u)


def _edge_vector(phi, rng) -> tuple[Fraction, ...]:
    if rng is None:
        return tuple(phi)
    scale = max(abs(x) for x in phi)
    while True:
        delta = tuple(Fraction(rng.randint(-9, 9), 10) * scale for _ in phi)
        cand = tuple(a + b for a, b in zip(phi, delta))
        if qq.dot(phi, cand) > 0:
            return cand


# ---------------------------------------------------------------------------
# pointing field oracle


def pointing_degree(geom: LevelGeometry, poly: SectionPolytope, p0: Sequence) -> int:
    """Gauss degree of ``x -> p0 - x`` on the boundary of ``poly``."""
    k = poly.k
    p0 = tuple(Fraction(x) for x in p0)
    for r, c in zip(geom.normals, geom.offsets):
        if qq.dot(r, p0) == c:
            raise DegreeError("the target point lies on a hyperplane")
    if any(abs(x) == w for x, w in zip(p0, geom.widths)):
        raise DegreeError("the target point lies on the box boundary")
    if k == 0:
        raise DegreeError("the pointing field is not defined on a point")
    if k == 1:
        a, b = poly.vertices[0][0], poly.vertices[1][0]
        if p0[0] in (a, b):
            raise DegreeError("the target point is an endpoint")
        return (_sign(p0[0] - b) - _sign(p0[0] - a)) // 2
    loop = [tuple(x - y for x, y in zip(p0, v)) for v in poly.vertices]
    return winding_number(loop)


def polytope_contains(geom: LevelGeometry, poly: SectionPolytope, p: Sequence) -> bool:
    """Strict interior membership of ``p`` in ``C cap F^k cap box``."""
    rows = geom.constraints(poly.signs)
    return all(qq.dot(u, p) > w for u, w, _ in rows)


# ---------------------------------------------------------------------------
# tables


@dataclass
class DegreeTable:
    """``deg(C, C')`` for ``C`` in ``ch^k`` and ``C'`` in ``ch^{k+1}``."""

    strat: Stratification
    tables: list[dict[tuple[tuple[int, ...], tuple[int, ...]], int]]

    def __call__(self, C, D) -> int:
        cs = C.signs if hasattr(C, "signs") else tuple(C)
        ds = D.signs if hasattr(D, "signs") else tuple(D)
        k = self.strat.level_of[cs]
        return self.tables[k][(cs, ds)]

    def matrix(self, k: int) -> list[list[int]]:
        """Rows ``ch^k``, columns ``ch^{k+1}``."""
        st = self.strat
        return [[self.tables[k][(C.signs, D.signs)] for D in st.ch[k + 1]] for C in st.ch[k]]

    def to_json(self) -> list:
        st = self.strat
        out = []
        for k in range(len(self.tables)):
            out.append({
                "rows": [C.label() for C in st.ch[k]],
                "cols": [D.label() for D in st.ch[k + 1]],
                "degrees": self.matrix(k),
            })
        return out


class DegreeEngine:
    """Caches level geometry and section polytopes for one stratification."""

    def __init__(self, strat: Stratification, box_scale: int = 1):
        A = strat.arrangement
        if A.dim > MAX_DEGREE_LEVEL + 1:
            raise DegreeError(f"chamber complexes are supported for dimension <= {MAX_DEGREE_LEVEL + 1}")
        self.strat = strat
        self.geom = [LevelGeometry.build(A, strat.flag[k], box_scale) for k in range(A.dim + 1)]
        self._polys: dict[tuple[int, ...], SectionPolytope] = {}

    def polytope(self, signs: Sequence[int], k: int | None = None) -> SectionPolytope:
        signs = tuple(signs)
        if k is None:
            k = self.strat.level_of[signs]
        key = signs + (k,)
        if key not in self._polys:
            self._polys[key] = section_polytope(self.geom[k], signs)
        return self._polys[key]

    def degree(self, C, target, perturb: Perturbation | None = None) -> int:
        cs = C.signs if hasattr(C, "signs") else tuple(C)
        ts = target.signs if hasattr(target, "signs") else tuple(target)
        k = self.strat.level_of[cs]
        return degree(self.geom[k], self.polytope(cs), ts, perturb)

    def table(self, perturb_seed: int | None = None) -> DegreeTable:
        st = self.strat
        tables = []
        for k in range(st.arrangement.dim):
            t = {}
            for n, C in enumerate(st.ch[k]):
                for m, D in enumerate(st.ch[k + 1]):
                    pert = Perturbation(perturb_seed * 1_000_003 + 1009 * n + m) if perturb_seed is not None else None
                    t[(C.signs, D.signs)] = self.degree(C, D, pert)
            tables.append(t)
        return DegreeTable(st, tables)


def degree_table(strat: Stratification, box_scale: int = 1, perturb_seed: int | None = None) -> DegreeTable:
    return DegreeEngine(strat, box_scale).table(perturb_seed)
