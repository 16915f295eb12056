import random
from fractions import Fraction

import pytest
from conftest import signs

from aomoto import qq
from aomoto.corpus import full_corpus
from aomoto.chamber_complex import ChamberComplex
from aomoto.degree import DegreeEngine, DegreeError, pointing_degree, polytope_contains, winding_number
from aomoto.flags import build_flag, opposite_signs, stratify
from aomoto.chambers import infinity_span


def test_winding_numbers_of_squares():
    sq = [(1, 1), (-1, 1), (-1, -1), (1, -1)]
    assert winding_number(sq) == 1
    assert winding_number(list(reversed(sq))) == -1
    assert winding_number([(x + 5, y) for x, y in sq]) == 0
    # twice around
    assert winding_number(sq + sq) == 2


def test_e1_degrees_on_spec_flag(e1, e1_flag):
    st = stratify(e1, e1_flag)
    eng = DegreeEngine(st)
    assert eng.degree(signs("+--"), signs("++-")) == -1
    assert eng.degree(signs("+-+"), signs("++-")) == 1
    assert eng.degree(signs("---"), signs("+-+")) == 1


def test_level_zero_degree_is_one(e1, e1_flag):
    eng = DegreeEngine(stratify(e1, e1_flag))
    for D in eng.strat.ch[1]:
        assert eng.degree(signs("---"), D) == 1


def _random_triples(rng, count):
    engines = []
    for name, A in full_corpus()[:14]:
        engines.append((name, DegreeEngine(stratify(A, build_flag(A, rng.randrange(100))))))
    out = []
    while len(out) < count:
        name, eng = engines[rng.randrange(len(engines))]
        st = eng.strat
        k = rng.randint(1, min(2, st.arrangement.dim))
        if not st.ch[k]:
            continue
        C = st.ch[k][rng.randrange(len(st.ch[k]))]
        out.append((name, eng, k, C))
    return out


def _point(rng, geom, poly, inside):
    if inside:
        # average of polygon vertices nudged by tiny random amounts
        c = [sum(v[j] for v in poly.vertices) / len(poly.vertices) for j in range(geom.k)]
        return tuple(x + Fraction(rng.randint(-5, 5), 10_007) for x in c)
    R = geom.radius
    return tuple(Fraction(rng.randint(-999, 999), 1000) * R for _ in range(geom.k))


def test_pointing_field_degree_oracle_on_random_triples():
    rng = random.Random(2024)
    checked = 0
    for name, eng, k, C in _random_triples(rng, 120):
        geom = eng.geom[k]
        poly = eng.polytope(C.signs)
        for inside in (True, False):
            p = _point(rng, geom, poly, inside)
            try:
                deg = pointing_degree(geom, poly, p)
            except DegreeError:
                continue
            expected = (-1) ** k if polytope_contains(geom, poly, p) else 0
            assert deg == expected, (name, k, C.label(), p)
            checked += 1
    assert checked >= 100


def test_pointing_rejects_points_on_hyperplanes(e1, e1_flag):
    eng = DegreeEngine(stratify(e1, e1_flag))
    geom = eng.geom[2]
    poly = eng.polytope(signs("++-"))
    with pytest.raises(DegreeError):
        pointing_degree(geom, poly, (0, Fraction(1, 3)))


def test_degree_table_stable_under_box_and_perturbation():
    for name, A in full_corpus()[:12]:
        st = stratify(A, build_flag(A, 1))
        base = DegreeEngine(st).table()
        assert DegreeEngine(st, box_scale=2).table().tables == base.tables, name
        assert DegreeEngine(st).table(perturb_seed=5).tables == base.tables, name


def test_opposite_degree_sign_rule():
    for name, A in full_corpus()[:14]:
        cx = ChamberComplex(A, seed=0)
        ell = A.dim
        for C in cx.strat.bch[ell - 1]:
            D = opposite_signs(A, C)
            d = infinity_span(A, C).dim
            assert cx.degrees(C, D) == (-1) ** (ell - 1 - d), (name, C.label())


def test_section_polygon_vertices_ccw(e1, e1_flag):
    eng = DegreeEngine(stratify(e1, e1_flag))
    poly = eng.polytope(signs("++-"))
    verts = poly.vertices
    area2 = sum(verts[j][0] * verts[(j + 1) % len(verts)][1] - verts[(j + 1) % len(verts)][0] * verts[j][1]
                for j in range(len(verts)))
    assert area2 > 0
    assert sorted(verts) == [(0, 0), (0, 1), (1, 0)]


def test_box_avoids_corners_for_diagonal_lines():
    from aomoto.arrangement import Arrangement

    # x = y and x = -y pass through corners of every square box centred at 0
    A = Arrangement.from_equations(2, [[1, -1, 0], [1, 1, 0], [1, 0, 1]])
    st = stratify(A, build_flag(A, 0))
    eng = DegreeEngine(st)
    geom = eng.geom[2]
    w1, w2 = geom.widths
    for r, c in zip(geom.normals, geom.offsets):
        for sx in (1, -1):
            for sy in (1, -1):
                assert qq.dot(r, (sx * w1, sy * w2)) != c
    eng.table()
