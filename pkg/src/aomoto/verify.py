"""The verification suite: every invariant checked on one arrangement."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from . import qq
from .arrangement import Arrangement, betti_euler, dense_edges_matroid, is_essential
from .chamber_complex import (ChamberComplex, LocalSystemData, cdo_local_hypothesis, chamber_certificate,
                              root_of_unity_system)
from .chambers import dense_edges_from_chambers, enumerate_chambers, infinity_span, separating_set
from .degree import DegreeEngine, pointing_degree, polytope_contains
from .flags import generic_section, is_inside_walls, opposite_signs, verify_flag, walls_classify
from .linalg import rank
from .orlik_solomon import (WeightVector, aomoto_cohomology, aomoto_matrices, check_cdo_units, lambda_flat,
                            nbc_basis, nonzero_on_dense_edges, os_algebra)
from .rings import QQ, ZZ, RingSpec, parse_ring_spec

PASS, FAIL, SKIP = "pass", "fail", "skipped"
MAX_CHAMBER_COMPLEX_DIM = 3

F5 = parse_ring_spec("F_5")


@dataclass
class CheckResult:
    name: str
    status: str
    witness: Any = None
    duration: float = 0.0

    def to_json(self, timings: bool = False) -> dict:
        out = {"name": self.name, "status": self.status, "witness": self.witness}
        if timings:
            out["seconds"] = round(self.duration, 4)
        return out


@dataclass
class VerificationReport:
    instance: dict
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def status(self, name: str) -> str:
        return self[name].status

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status == FAIL]

    def to_json(self, timings: bool = False) -> dict:
        return {
            "instance": self.instance,
            "ok": self.ok,
            "checks": [c.to_json(timings) for c in self.checks],
        }


@dataclass
class VerifyOptions:
    seed: int = 0
    ring: RingSpec | None = None
    lam: list | None = None
    q_sqrt: list | None = None
    dim_threshold: int = 0
    pointing_samples: int = 12
    random_weights: int = 2


class _Skip(Exception):
    pass


class _Fail(Exception):
    def __init__(self, witness):
        super().__init__(str(witness))
        self.witness = witness


def _ensure(cond: bool, witness) -> None:
    if not cond:
        raise _Fail(witness)


def _lab(signs) -> str:
    return "".join("+" if s > 0 else "-" for s in signs)


def _dims(groups) -> list:
    return [[g.free_rank, list(g.torsion_invariants)] if g.torsion_invariants else g.free_rank for g in groups]


def _fmt(R: RingSpec, x):
    return R.format_element(x)


class _Suite:
    def __init__(self, A: Arrangement, opts: VerifyOptions):
        self.A = A
        self.opts = opts
        self.checks: list[CheckResult] = []
        self._cx: ChamberComplex | None = None
        self.chambers = None
        self.betti, self.chi = betti_euler(A)
        self.essential = is_essential(A)

    def rng(self, name: str) -> random.Random:
        return random.Random(f"{self.opts.seed}:{name}")

    def run(self, name: str, fn: Callable[[], Any]) -> None:
        t = time.perf_counter()
        try:
            witness = fn()
            status = PASS
        except _Skip as e:
            status, witness = SKIP, str(e)
        except _Fail as e:
            status, witness = FAIL, e.witness
        except Exception as e:  # report-valued: any error is a failure of that check
            status, witness = FAIL, f"{type(e).__name__}: {e}"
        self.checks.append(CheckResult(name, status, witness, time.perf_counter() - t))

    # -- shared objects ------------------------------------------------------

    def need_flag(self):
        if not self.essential:
            raise _Skip("arrangement is not essential")

    def need_complex(self) -> ChamberComplex:
        self.need_flag()
        if self.A.dim > MAX_CHAMBER_COMPLEX_DIM:
            raise _Skip(f"chamber complexes are computed for dimension <= {MAX_CHAMBER_COMPLEX_DIM}")
        if self._cx is None:
            self._cx = ChamberComplex(self.A, seed=self.opts.seed, chambers=self.get_chambers())
        return self._cx

    def get_chambers(self):
        if self.chambers is None:
            self.chambers = enumerate_chambers(self.A)
        return self.chambers

    def random_weights(self, R: RingSpec, rng: random.Random) -> WeightVector:
        if R.kind == "rationals":
            return WeightVector.of(R, [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(self.A.n)])
        if R.kind == "integers":
            return WeightVector.of(R, [rng.randint(-4, 4) for _ in range(self.A.n)])
        m = R.modulus
        return WeightVector.of(R, [rng.randrange(m) for _ in range(self.A.n)])

    def user_weights(self) -> WeightVector | None:
        o = self.opts
        if o.ring is None or o.lam is None:
            return None
        return WeightVector.of(o.ring, o.lam)

    def local_data(self) -> LocalSystemData | None:
        o = self.opts
        if o.ring is None or o.q_sqrt is None:
            return None
        return LocalSystemData.of(o.ring, o.q_sqrt)

    # -- checks ----------------------------------------------------------------

    def chamber_count(self):
        ch = self.get_chambers()
        _ensure(len(ch) == sum(self.betti), {"chambers": len(ch), "betti": list(self.betti)})
        bounded = sum(1 for C in ch if C.bounded)
        if self.essential:
            _ensure(bounded == abs(self.chi), {"bounded": bounded, "chi": self.chi})
        return {"chambers": len(ch), "bounded": bounded, "betti": list(self.betti), "chi": self.chi}

    def nbc_counts(self):
        counts = [len(B) for B in nbc_basis(self.A)]
        counts += [0] * (self.A.dim + 1 - len(counts))
        _ensure(tuple(counts) == self.betti, {"nbc": counts, "betti": list(self.betti)})
        return {"nbc": counts}

    def chamber_witnesses(self):
        ch = self.get_chambers()
        _ensure(len({C.signs for C in ch}) == len(ch), "repeated sign vector")
        for C in ch:
            _ensure(self.A.sign_vector(C.interior_point) == C.signs, {"chamber": C.label()})
            for v in C.recession_generators:
                for s, h in zip(C.signs, self.A.hyperplanes):
                    _ensure(s * qq.dot(h.normal, v) >= 0, {"chamber": C.label(), "generator": [str(x) for x in v]})
            if C.recession_generators:
                _ensure(qq.rank(list(C.recession_generators)) == len(C.span_basis), {"chamber": C.label()})
        return {"chambers": len(ch)}

    def dense_infinity(self):
        self.need_flag()
        a = {X.support: X for X in dense_edges_matroid(self.A, "at_infinity")}
        b = {X.support: X for X in dense_edges_from_chambers(self.A, self.get_chambers())}
        _ensure(a.keys() == b.keys(), {"matroid": [X.label() for X in a.values()],
                                       "chambers": [X.label() for X in b.values()]})
        return {"dense_at_infinity": [X.label() for X in a.values()]}

    def flag_valid(self):
        cx = self.need_complex()
        rep = verify_flag(self.A, cx.flag)
        _ensure(rep.ok, rep.to_json())
        return {"seed": cx.flag.seed}

    def strata(self):
        cx = self.need_complex()
        st = cx.strat
        counts = st.counts()
        ell = self.A.dim
        expected_b = [sum((-1) ** (k - j) * self.betti[j] for j in range(k + 1)) for k in range(ell + 1)]
        _ensure(counts["ch"] == list(self.betti), counts)
        _ensure(counts["bch"] == expected_b, {"bch": counts["bch"], "expected": expected_b})
        for k in range(ell):
            img = list(st.iota[k].values())
            _ensure(len(set(img)) == len(img), {"level": k, "reason": "opposite map not injective"})
            _ensure(set(img) == {C.signs for C in st.uch[k + 1]},
                    {"level": k, "image": sorted(map(_lab, img)), "uch": [C.label() for C in st.uch[k + 1]]})
        return counts

    def opposite_geometry(self):
        """``p - t v`` for large ``t`` lands in the opposite chamber."""
        A = self.A
        by_signs = {C.signs: C for C in self.get_chambers()}
        checked = 0
        for C in self.get_chambers():
            if C.bounded:
                continue
            t_signs = opposite_signs(A, C)
            _ensure(t_signs in by_signs, {"chamber": C.label(), "opposite": _lab(t_signs)})
            X = infinity_span(A, C)
            sep = separating_set(C, by_signs[t_signs])
            _ensure(sep == frozenset(range(A.n)) - X.support, {"chamber": C.label()})
            if X.dim == A.dim - 1:
                _ensure(sep == frozenset(range(A.n)), {"chamber": C.label(), "reason": "full-dimensional X(C)"})
            v = C.recession_generators[0]
            p = C.interior_point
            t = Fraction(1)
            for s, h in zip(C.signs, A.hyperplanes):
                av = qq.dot(h.normal, v)
                if av:
                    t = max(t, 2 * abs(h.value(p) / av) + 1)
            q = tuple(x - t * y for x, y in zip(p, v))
            _ensure(A.sign_vector(q) == t_signs, {"chamber": C.label(), "reached": _lab(A.sign_vector(q))})
            back = opposite_signs(A, by_signs[t_signs])
            _ensure(back == C.signs, {"chamber": C.label(), "double_opposite": _lab(back)})
            checked += 1
        return {"unbounded_checked": checked}

    def section_opposites(self):
        cx = self.need_complex()
        st = cx.strat
        n = 0
        for k in range(self.A.dim):
            for C in st.bch[k]:
                s = cx.section_opposite(C)
                _ensure(s == st.iota[k][C.signs], {"chamber": C.label(), "section": _lab(s),
                                                    "ambient": _lab(st.iota[k][C.signs])})
                n += 1
        return {"checked": n}

    def lambda_identity(self):
        A = self.A
        rings = [ZZ, QQ, F5, parse_ring_spec("Z/12")]
        by_signs = {C.signs: C for C in self.get_chambers()}
        ws = [self.random_weights(R, self.rng(f"lam-{R}")) for R in rings]
        u = self.user_weights()
        if u is not None:
            ws.append(u)
        for w in ws:
            for C in self.get_chambers():
                if C.bounded:
                    continue
                D = by_signs[opposite_signs(A, C)]
                lhs = w.sum_over(sorted(separating_set(C, D)))
                rhs = -lambda_flat(w, infinity_span(A, C))
                _ensure(lhs == rhs, {"ring": str(w.ring), "chamber": C.label()})
        return {"rings": [str(w.ring) for w in ws]}

    def walls(self):
        cx = self.need_complex()
        A = self.A
        st = cx.strat
        ell = A.dim
        out = []
        unbounded = [D for D in self.get_chambers() if not D.bounded]
        for C in st.bch[ell - 1]:
            wd = walls_classify(A, cx.flag, C)
            _ensure(wd.wall1 | wd.wall2 == wd.wall and not (wd.wall1 & wd.wall2), wd.to_json())
            opp = st.chamber(st.iota[ell - 1][C.signs])
            _ensure(separating_set(C, opp) & wd.wall == wd.wall2, wd.to_json())
            for D in unbounded:
                is_inside_walls(A, D, C, wd)  # raises when containment fails
            out.append(wd.to_json())
        return {"walls": out}

    def confluence(self):
        O = os_algebra(self.A)
        rng = self.rng("confluence")
        n = self.A.n
        tried = 0
        for _ in range(40):
            k = rng.randint(1, min(n, self.A.dim + 1))
            mono = tuple(rng.sample(range(n), k))
            a, b = O.reduce(mono, "smallest"), O.reduce(mono, "largest")
            _ensure(a == b, {"monomial": [i + 1 for i in mono]})
            tried += 1
        return {"monomials": tried}

    def aomoto_square(self):
        for R in (ZZ, QQ, F5):
            w = self.random_weights(R, self.rng(f"sq-{R}"))
            mats = aomoto_matrices(self.A, w)
            for k in range(len(mats) - 1):
                _ensure((mats[k + 1] @ mats[k]).is_zero(), {"ring": str(R), "degree": k})
        return None

    def nabla_square(self):
        cx = self.need_complex()
        coeffs = [self.random_weights(R, self.rng(f"nsq-{R}")) for R in (ZZ, QQ, F5)]
        rng = self.rng("nsq-local")
        coeffs.append(LocalSystemData.of(QQ, [Fraction(rng.choice([-3, -2, 2, 3, 5]), rng.choice([1, 2, 7]))
                                              for _ in range(self.A.n)]))
        coeffs.append(root_of_unity_system(self.random_weights(parse_ring_spec("F_3"), rng), 3))
        for c in coeffs:
            mats = cx.coboundaries(c)
            for k in range(len(mats) - 1):
                _ensure((mats[k + 1] @ mats[k]).is_zero(), {"ring": str(c.ring), "degree": k})
        return {"coefficient_systems": len(coeffs)}

    def cohomology_agree(self):
        cx = self.need_complex()
        out = []
        for R in (QQ, F5, ZZ):
            ws = [WeightVector.of(R, [1] * self.A.n), WeightVector.of(R, [0] * self.A.n)]
            ws += [self.random_weights(R, self.rng(f"coh-{R}-{j}")) for j in range(self.opts.random_weights)]
            for w in ws:
                a = aomoto_cohomology(self.A, w)
                b = cx.cohomology(w)
                _ensure(a == b, {"ring": str(R), "lambda": w.to_json()["lambda"], "aomoto": _dims(a), "chamber": _dims(b)})
                out.append({"ring": str(R), "dims": _dims(a)})
        return out

    def trivial_local(self):
        cx = self.need_complex()
        ls = LocalSystemData.of(QQ, [1] * self.A.n)
        dims = [g.free_rank for g in cx.cohomology(ls)]
        _ensure(dims == list(self.betti), {"dims": dims})
        return {"dims": dims}

    def block_triangular(self):
        cx = self.need_complex()
        w = self.random_weights(QQ, self.rng("tri"))
        out = []
        for k in range(self.A.dim):
            b = cx.restricted_block(w, k)
            _ensure(b.degree_triangular, {"level": k, "degrees": b.degrees,
                                          "ordering": [_lab(s) for s in b.rows]})
            out.append({"level": k, "size": len(b.rows), "entry_triangular": b.entry_triangular})
        return out

    def diagonal_degrees(self):
        cx = self.need_complex()
        w = WeightVector.of(QQ, [1] * self.A.n)
        out = []
        for k in range(self.A.dim):
            b = cx.restricted_block(w, k)
            _ensure(b.diagonal_degrees == b.expected_diagonal,
                    {"level": k, "degrees": b.diagonal_degrees, "expected": b.expected_diagonal})
            out.append({"level": k, "degrees": b.diagonal_degrees})
        return out

    def determinant_identity(self):
        cx = self.need_complex()
        out = []
        for k in range(self.A.dim):
            holds, sign, det = cx.symbolic_block_identity(k)
            _ensure(holds, {"level": k, "det": det})
            out.append({"level": k, "sign": sign})
        return out

    def pointing(self):
        cx = self.need_complex()
        st = cx.strat
        eng = cx.engine
        rng = self.rng("pointing")
        n = 0
        for k in range(1, min(self.A.dim, 2) + 1):
            cands = st.ch[k]
            if not cands:
                continue
            geom = eng.geom[k]
            for _ in range(self.opts.pointing_samples):
                C = rng.choice(cands)
                poly = eng.polytope(C.signs)
                p0 = _sample_point(rng, geom, st.section_points[C.signs])
                if p0 is None:
                    continue
                inside = polytope_contains(geom, poly, p0)
                expect = (-1) ** k if inside else 0
                got = pointing_degree(geom, poly, p0)
                target = self.A.sign_vector(st.flag[k].point(p0))
                engine = eng.degree(C, target)
                _ensure(got == expect == engine, {"chamber": C.label(), "level": k, "point": [str(x) for x in p0],
                                                  "oracle": got, "engine": engine, "expected": expect})
                n += 1
        return {"samples": n}

    def stability(self):
        cx = self.need_complex()
        base = cx.degrees.tables
        doubled = DegreeEngine(cx.strat, box_scale=2).table().tables
        _ensure(doubled == base, "degree table changed when doubling the box")
        for s in (1, 2):
            pert = cx.engine.table(perturb_seed=s + 97 * self.opts.seed).tables
            _ensure(pert == base, {"perturbation_seed": s})
        return None

    def yuzvinsky(self):
        self.need_flag()
        rng = self.rng("yuz")
        for _ in range(20):
            w = self.random_weights(QQ, rng)
            if nonzero_on_dense_edges(self.A, w):
                break
        else:
            raise _Skip("no sampled weight avoided the dense edges")
        dims = [g.free_rank for g in aomoto_cohomology(self.A, w)]
        _ensure(dims == [0] * self.A.dim + [abs(self.chi)], {"dims": dims, "lambda": w.to_json()["lambda"]})
        return {"dims": dims}

    def cdo_random(self):
        cx = self.need_complex()
        rng = self.rng("cdo")
        out = []
        for R in (F5, parse_ring_spec("Z/9"), parse_ring_spec("Z/4"), ZZ):
            for _ in range(40):
                w = self.random_weights(R, rng)
                if check_cdo_units(self.A, w).ok:
                    break
            else:
                continue
            cert = chamber_certificate(cx, w)
            _ensure(cert.ok, {"ring": str(R), "refusal": cert.refusal})
            expected = [0] * self.A.dim + [abs(self.chi)]
            _ensure([g.free_rank for g in cert.groups] == expected, {"ring": str(R)})
            if R.is_field or R.kind == "integers":
                full = aomoto_cohomology(self.A, w)
                _ensure([g.free_rank for g in full] == expected and all(not g.torsion_invariants for g in full),
                        {"ring": str(R), "full": _dims(full)})
            out.append(str(R))
        if not out:
            raise _Skip("no sampled weight satisfied the hypothesis")
        return {"rings": out}

    def cdo_local(self):
        cx = self.need_complex()
        rng = self.rng("cdo-local")
        tested = 0
        for _ in range(6):
            ls = LocalSystemData.of(QQ, [Fraction(rng.choice([-3, -2, 2, 3, 5, 7]), rng.choice([1, 2, 3]))
                                         for _ in range(self.A.n)])
            ok, _ = cdo_local_hypothesis(self.A, ls)
            if not ok:
                continue
            dims = [g.free_rank for g in cx.cohomology(ls)]
            _ensure(dims == [0] * self.A.dim + [abs(self.chi)], {"q_sqrt": ls.to_json()["q_sqrt"], "dims": dims})
            tested += 1
        if not tested:
            raise _Skip("no sampled local system satisfied the hypothesis")
        return {"systems": tested}

    def papadima_suciu(self):
        cx = self.need_complex()
        out = []
        for p in (2, 3):
            Fp = parse_ring_spec(f"F_{p}")
            rng = self.rng(f"ps-{p}")
            ws = [WeightVector.of(Fp, [1] * self.A.n)] + [self.random_weights(Fp, rng) for _ in range(2)]
            for w in ws:
                ls = root_of_unity_system(w, p)
                local = [g.free_rank for g in cx.cohomology(ls)]
                aom = [g.free_rank for g in aomoto_cohomology(self.A, w)]
                _ensure(all(a <= b for a, b in zip(local, aom)),
                        {"p": p, "lambda": w.to_json()["lambda"], "local": local, "aomoto": aom})
                out.append({"p": p, "local": local, "aomoto": aom})
        return out

    def truncation(self):
        cx = self.need_complex()
        A = self.A
        w = self.random_weights(QQ, self.rng("trunc"))
        mats = aomoto_matrices(A, w)
        for k in range(1, A.dim):
            S = generic_section(A, cx.flag, k)
            b = betti_euler(S)[0]
            _ensure(list(b) == list(self.betti[:k + 1]), {"level": k, "section_betti": list(b)})
            ms = aomoto_matrices(S, WeightVector(QQ, w.values))
            for j in range(k):
                _ensure(rank(ms[j]) == rank(mats[j]), {"level": k, "degree": j})
        return None

    # -- user supplied coefficients -------------------------------------------

    def user_hypothesis(self):
        w = self.user_weights()
        if w is None:
            raise _Skip("no weights supplied")
        self.need_flag()
        chk = check_cdo_units(self.A, w, self.opts.dim_threshold)
        self._user_hyp = chk.ok
        _ensure(chk.ok, chk.to_json())
        return chk.to_json()

    def user_vanishing(self):
        w = self.user_weights()
        if w is None:
            raise _Skip("no weights supplied")
        if not getattr(self, "_user_hyp", False):
            raise _Skip("unit hypothesis does not hold for the supplied weights")
        if self.opts.dim_threshold > 0:
            raise _Skip("vanishing below the top degree is only certified for threshold 0")
        cx = self.need_complex()
        cert = chamber_certificate(cx, w)
        _ensure(cert.ok, cert.refusal)
        expected = [0] * self.A.dim + [abs(self.chi)]
        got = [g.free_rank for g in cert.groups]
        _ensure(got == expected, {"certificate": got})
        if w.ring.is_field or w.ring.kind == "integers":
            full = aomoto_cohomology(self.A, w)
            _ensure(_dims(full) == expected, {"full": _dims(full)})
        return {"dims": got, "ring": str(w.ring)}

    def user_local_check(self):
        ls = self.local_data()
        if ls is None:
            raise _Skip("no half-monodromies supplied")
        cx = self.need_complex()
        ok, bad = cdo_local_hypothesis(self.A, ls)
        dims = [g.free_rank for g in cx.cohomology(ls)]
        if ok:
            _ensure(dims == [0] * self.A.dim + [abs(self.chi)], {"dims": dims})
        return {"dims": dims, "hypothesis": ok, "violators": [X.label() for X, _ in bad]}


def _sample_point(rng: random.Random, geom, inner) -> tuple | None:
    R = geom.radius
    for _ in range(20):
        if inner is not None and rng.random() < 0.5:
            base = inner
            p = tuple(Fraction(x) + Fraction(rng.randint(-20, 20), rng.randint(1, 20)) for x in base)
        else:
            p = tuple(Fraction(rng.randint(-1000, 1000), 1000) * R for _ in range(geom.k))
        if any(abs(x) >= R for x in p):
            continue
        if any(qq.dot(r, p) == c for r, c in zip(geom.normals, geom.offsets)):
            continue
        return p
    return None


CHECKS = [
    ("chamber_count_matches_betti_numbers", "chamber_count"),
    ("nbc_counts_match_betti_numbers", "nbc_counts"),
    ("chamber_witnesses_realize_sign_vectors", "chamber_witnesses"),
    ("dense_infinity_matroid_equals_chamber_spans", "dense_infinity"),
    ("flag_is_generic_and_near_infinity", "flag_valid"),
    ("strata_counts_and_opposite_bijection", "strata"),
    ("opposite_chamber_reached_along_recession_ray", "opposite_geometry"),
    ("section_opposite_matches_ambient_opposite", "section_opposites"),
    ("separating_weight_equals_minus_flat_weight", "lambda_identity"),
    ("wall_split_and_inside_wall_containment", "walls"),
    ("nbc_straightening_is_confluent", "confluence"),
    ("aomoto_differential_squares_to_zero", "aomoto_square"),
    ("chamber_differentials_square_to_zero", "nabla_square"),
    ("chamber_and_aomoto_cohomology_agree", "cohomology_agree"),
    ("trivial_local_system_gives_betti_numbers", "trivial_local"),
    ("restricted_blocks_triangular_in_dim_order", "block_triangular"),
    ("opposite_degrees_follow_sign_rule", "diagonal_degrees"),
    ("block_determinant_is_product_of_diagonal", "determinant_identity"),
    ("pointing_field_degree_oracle", "pointing"),
    ("degree_table_stable_under_box_and_perturbation", "stability"),
    ("nonresonant_rational_weights_concentrate_in_top_degree", "yuzvinsky"),
    ("unit_weights_at_infinity_concentrate_in_top_degree", "cdo_random"),
    ("nontrivial_monodromy_at_infinity_concentrates_in_top_degree", "cdo_local"),
    ("local_system_dims_bounded_by_mod_p_aomoto_dims", "papadima_suciu"),
    ("generic_section_truncates_aomoto_complex", "truncation"),
    ("supplied_weights_unit_at_dense_infinity_edges", "user_hypothesis"),
    ("supplied_weights_vanishing_below_top_degree", "user_vanishing"),
    ("supplied_local_system_cohomology", "user_local_check"),
]


def run_verify_suite(A: Arrangement, options: VerifyOptions | None = None, name: str = "") -> VerificationReport:
    opts = options or VerifyOptions()
    suite = _Suite(A, opts)
    for check, method in CHECKS:
        suite.run(check, getattr(suite, method))
    instance = {"name": name, "dim": A.dim, "n": A.n, "seed": opts.seed,
                "betti": list(suite.betti), "chi": suite.chi}
    return VerificationReport(instance, suite.checks)
