import random
from fractions import Fraction
from itertools import combinations

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from aomoto.arrangement import INF, Arrangement, betti_euler, intersection_poset
from aomoto.corpus import builtin, full_corpus, random_corpus
from aomoto.linalg import check_complex
from aomoto.orlik_solomon import (WeightVector, aomoto_cohomology, aomoto_matrices, check_cdo_units, lambda_flat,
                                  nbc_basis, nonzero_on_dense_edges, os_algebra, reduce_to_nbc)
from aomoto.rings import parse_ring_spec

F2 = parse_ring_spec("F_2")
F3 = parse_ring_spec("F_3")
Q = parse_ring_spec("Q")
Z = parse_ring_spec("Z")


# -- brute-force oracle: the OS ideal inside the exterior algebra --------------


def _wedge(S, T):
    """``e_S ^ e_T`` as (sign, sorted set) or None."""
    if set(S) & set(T):
        return None
    seq = list(S) + list(T)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign, tuple(sorted(seq))


def _ideal_rows(A, k):
    """Spanning vectors of the degree-k part of the OS ideal (exterior basis)."""
    basis = list(combinations(range(A.n), k))
    idx = {S: j for j, S in enumerate(basis)}
    gens = []
    for r in range(1, k + 1):
        for S in combinations(range(A.n), r):
            if A.affine_meet(S) is None:
                gens.append({S: 1})
            elif A.rank_of(S) < len(S):
                gens.append({S[:q] + S[q + 1:]: (-1) ** q for q in range(len(S))})
    rows = []
    for g in gens:
        deg = len(next(iter(g)))
        for T in combinations(range(A.n), k - deg):
            v = [0] * len(basis)
            for S, c in g.items():
                w = _wedge(S, T)
                if w is not None:
                    v[idx[w[1]]] += c * w[0]
            if any(v):
                rows.append(v)
    return basis, idx, rows


def _oracle_dims(A):
    out = []
    for k in range(A.dim + 1):
        basis, _, rows = _ideal_rows(A, k)
        r = sympy.Matrix(rows).rank() if rows else 0
        out.append(len(basis) - r)
    return out


def test_e1_nbc_basis(e1):
    assert nbc_basis(e1)[2] == [(0, 1), (0, 2), (1, 2)]


def test_e4_nbc_basis(e4):
    assert nbc_basis(e4)[2] == [(0, 2), (1, 2)]


def test_low_degree_nbc(fig1):
    B = nbc_basis(fig1)
    assert B[0] == [()]
    assert B[1] == [(i,) for i in range(fig1.n)]


def test_nbc_counts_equal_betti_numbers():
    for name, A in full_corpus()[:16]:
        b, _ = betti_euler(A)
        assert [len(x) for x in nbc_basis(A)] + [0] * (A.dim + 1 - len(nbc_basis(A))) == list(b), name


def test_nbc_counts_match_ideal_quotient_dimensions():
    for name, A in [("E1", builtin("E1")), ("E4", builtin("E4")), ("FIG1", builtin("FIG1"))] + random_corpus(5, 6):
        if A.n > 6:
            continue
        dims = _oracle_dims(A)
        got = [len(x) for x in nbc_basis(A)]
        got += [0] * (len(dims) - len(got))
        assert got == dims, name


def test_triple_product_vanishes_in_e1(e1):
    assert reduce_to_nbc((0, 1, 2), e1) == {}


def test_nbc_monomial_reduces_to_itself(e1):
    for S in nbc_basis(e1)[2]:
        assert reduce_to_nbc(S, e1) == {S: 1}


def test_central_rank_two_circuit_rewrite():
    # x = 0, y = 0, x + y = 0 : e_2 e_3 = e_1 e_3 - e_1 e_2
    A = Arrangement.from_equations(2, [[1, 0, 0], [0, 1, 0], [1, 1, 0]])
    assert reduce_to_nbc((1, 2), A) == {(0, 2): 1, (0, 1): -1}
    assert reduce_to_nbc((2, 1), A) == {(0, 2): -1, (0, 1): 1}


def _in_ideal(A, k, vec):
    basis, idx, rows = _ideal_rows(A, k)
    M = sympy.Matrix(rows) if rows else sympy.zeros(0, len(basis))
    r0 = M.rank() if rows else 0
    v = [0] * len(basis)
    for S, c in vec.items():
        v[idx[S]] += c
    if not any(v):
        return True
    return sympy.Matrix(rows + [v]).rank() == r0


def test_reduction_differs_from_monomial_by_ideal_element():
    for name, A in [("FIG1", builtin("FIG1")), ("E4", builtin("E4"))] + random_corpus(11, 4):
        if A.n > 6:
            continue
        for k in range(2, A.dim + 1):
            for S in combinations(range(A.n), k):
                red = reduce_to_nbc(S, A)
                diff = {S: 1}
                for T, c in red.items():
                    diff[T] = diff.get(T, 0) - c
                assert _in_ideal(A, k, diff), (name, S)


def test_straightening_is_confluent():
    for name, A in full_corpus()[:14]:
        O = os_algebra(A)
        for k in range(2, A.dim + 1):
            for S in combinations(range(A.n), k):
                assert O.reduce(S, "smallest") == O.reduce(S, "largest"), (name, S)


def test_broken_circuits_are_circuits(fig1):
    O = os_algebra(fig1)
    for S in combinations(range(fig1.n), 2):
        for C in O.broken_circuits(S):
            assert fig1.rank_of(C) == len(C) - 1
            assert all(fig1.rank_of([x for x in C if x != e]) == len(C) - 1 for e in C)


def test_lambda_of_flats(e4):
    w = WeightVector.of(Q, [1, 2, 5])
    _, projective = intersection_poset(e4)
    inf = next(X for X in projective if X.support == {INF})
    Xv = next(X for X in projective if X.support == {0, 1, INF})
    assert lambda_flat(w, inf) == w.infinity == -8
    assert lambda_flat(w, Xv) == -5
    pt = e4.affine_meet((0, 2))
    assert lambda_flat(w, pt) == 1 + 5


def test_aomoto_degree_zero_is_weight_vector(e1):
    w = WeightVector.of(Q, [2, 3, 7])
    assert [r[0] for r in aomoto_matrices(e1, w)[0].tolist()] == [2, 3, 7]


def test_e1_degree_one_matrix_over_f2(e1):
    M = aomoto_matrices(e1, WeightVector.of(F2, [1, 1, 1]))[1]
    cols = [[int(M[i, j]) for i in range(3)] for j in range(3)]
    assert cols == [[1, 1, 0], [1, 0, 1], [0, 1, 1]]


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(["Z", "Q", "F_2", "F_5", "Z/4", "Z/6", "Q(zeta_6)"]))
def test_aomoto_differential_squares_to_zero(seed, ring):
    rng = random.Random(seed)
    A = random_corpus(seed % 97, 1)[0][1]
    R = parse_ring_spec(ring)
    if ring.startswith("Q(zeta"):
        w = WeightVector.of(R, [[rng.randint(-2, 2) for _ in range(2)] for _ in range(A.n)])
    else:
        w = WeightVector.of(R, [rng.randint(-5, 5) for _ in range(A.n)])
    check_complex(aomoto_matrices(A, w))


def test_e1_over_f2_top_degree_only(e1):
    groups = aomoto_cohomology(e1, WeightVector.of(F2, [1, 1, 1]))
    assert [g.free_rank for g in groups] == [0, 0, 1]


def test_e1_over_integers_torsion_free(e1):
    groups = aomoto_cohomology(e1, WeightVector.of(Z, [1, 1, -3]))
    assert [g.free_rank for g in groups] == [0, 0, 1]
    assert all(not g.torsion_invariants for g in groups)


def test_e4_over_rationals_acyclic(e4):
    groups = aomoto_cohomology(e4, WeightVector.of(Q, [1, 1, 1]))
    assert all(g.is_zero for g in groups)


def test_certificate_mode_over_z4(e1):
    groups = aomoto_cohomology(e1, WeightVector.of(parse_ring_spec("Z/4"), [1, 1, 1]), mode="certificate")
    assert [g.free_rank for g in groups] == [0, 0, 1]


def test_full_mode_refuses_non_field(e1):
    with pytest.raises(ValueError):
        aomoto_cohomology(e1, WeightVector.of(parse_ring_spec("Z/4"), [1, 1, 1]))


def test_unit_hypothesis_examples(e1, e4):
    chk = check_cdo_units(e1, WeightVector.of(F2, [1, 1, 1]), 0)
    assert chk.ok and [X.support for X, _ in chk.tested] == [frozenset({INF})]
    chk = check_cdo_units(e4, WeightVector.of(F3, [1, 1, 1]), 0)
    assert not chk.ok and [X.support for X, _ in chk.witnesses] == [frozenset({INF})]
    chk = check_cdo_units(e4, WeightVector.of(F3, [1, 1, 1]), 1)
    assert not chk.ok and chk.witnesses[0][1] == F3(0)


def test_trivial_weights_give_betti_numbers():
    for name, A in full_corpus()[:10]:
        b, _ = betti_euler(A)
        groups = aomoto_cohomology(A, WeightVector.of(Q, [0] * A.n))
        assert [g.free_rank for g in groups] == list(b), name


def test_nonresonant_weights_concentrate():
    rng = random.Random(4)
    for name, A in full_corpus()[:12]:
        b, chi = betti_euler(A)
        for _ in range(5):
            w = WeightVector.of(Q, [Fraction(rng.randint(1, 40), rng.randint(1, 7)) for _ in range(A.n)])
            if nonzero_on_dense_edges(A, w):
                dims = [g.free_rank for g in aomoto_cohomology(A, w)]
                assert dims == [0] * A.dim + [abs(chi)], name
                break
