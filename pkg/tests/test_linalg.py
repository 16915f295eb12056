from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from aomoto.linalg import (ComplexError, Matrix, check_complex, complex_cohomology, determinant,
                           invariant_factors, laplace_determinant, rank, rank_kernel, smith_normal_form)
from aomoto.rings import QQ, ZZ, parse_ring_spec

F2 = parse_ring_spec("F_2")


def test_snf_identity():
    _, D, _ = smith_normal_form(Matrix.identity(ZZ, 3))
    assert D == Matrix.identity(ZZ, 3)


def test_snf_two_by_two():
    M = Matrix.from_rows(ZZ, [[2, 4], [6, 8]])
    U, D, V = smith_normal_form(M)
    assert D.tolist() == [[2, 0], [0, 4]]
    assert U @ M @ V == D


def test_snf_zero():
    _, D, _ = smith_normal_form(Matrix.zeros(ZZ, 2, 3))
    assert D.is_zero()


int_matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)))


@settings(max_examples=60, deadline=None)
@given(int_matrices)
def test_snf_matches_sympy_oracle(rows):
    M = Matrix.from_rows(ZZ, rows)
    U, D, V = smith_normal_form(M)
    assert U @ M @ V == D
    assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
    diag = [D[i, i] for i in range(min(D.shape))]
    for a, b in zip(diag, diag[1:]):
        assert b == 0 or (a != 0 and b % a == 0)
    oracle = sympy_snf(sympy.Matrix(rows), domain=sympy.ZZ)
    expected = sorted(abs(int(oracle[i, i])) for i in range(min(oracle.shape)) if oracle[i, i] != 0)
    assert sorted(invariant_factors(M)) == expected


def test_rank_identity_over_q():
    r, ker = rank_kernel(Matrix.identity(QQ, 4))
    assert r == 4 and ker == []


def test_rank_kernel_over_f2():
    # columns (1,1,0), (1,0,1), (0,1,1)
    M = Matrix.from_rows(F2, [[1, 1, 0], [1, 0, 1], [0, 1, 1]])
    r, ker = rank_kernel(M)
    assert r == 2
    assert len(ker) == 1 and [int(x) for x in ker[0]] == [1, 1, 1]


def test_rank_of_empty_map():
    M = Matrix.zeros(QQ, 0, 3)
    r, ker = rank_kernel(M)
    assert r == 0 and len(ker) == 3


@settings(max_examples=40, deadline=None)
@given(int_matrices)
def test_rank_over_q_matches_sympy(rows):
    assert rank(Matrix.from_rows(QQ, rows)) == sympy.Matrix(rows).rank()


def test_determinant_small_cases():
    assert determinant(Matrix.from_rows(ZZ, [[7]])) == 7
    assert determinant(Matrix.from_rows(ZZ, [[2, 0], [0, 4]])) == 8


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n),
                                                     min_size=n, max_size=n)))
def test_determinant_matches_cofactor_oracle(rows):
    expected = int(sympy.Matrix(rows).det())
    assert determinant(Matrix.from_rows(ZZ, rows)) == expected
    assert laplace_determinant(rows, 0, 1) == expected
    Z6 = parse_ring_spec("Z/6")
    assert determinant(Matrix.from_rows(Z6, rows)) == Z6(expected)
    F7 = parse_ring_spec("F_7")
    assert determinant(Matrix.from_rows(F7, rows)) == F7(expected)
    q = [[Fraction(x, 3) for x in r] for r in rows]
    assert determinant(Matrix.from_rows(QQ, q)) == Fraction(expected, 3 ** len(rows))


def test_symbolic_two_by_two_determinant():
    a, b, c, d = sympy.symbols("a b c d")
    assert sympy.expand(laplace_determinant([[a, b], [c, d]], sympy.Integer(0), sympy.Integer(1)) - (a * d - b * c)) == 0


def test_zero_complex_cohomology_is_module():
    deltas = [Matrix.zeros(ZZ, 3, 1), Matrix.zeros(ZZ, 3, 3)]
    groups = complex_cohomology(deltas, ZZ)
    assert [g.free_rank for g in groups] == [1, 3, 3]


def test_non_complex_rejected():
    d0 = Matrix.from_rows(QQ, [[1], [0]])
    d1 = Matrix.from_rows(QQ, [[1, 0]])
    with pytest.raises(ComplexError):
        check_complex([d0, d1])


def test_torsion_detected_over_integers():
    # Z --2--> Z gives H^1 = Z/2
    groups = complex_cohomology([Matrix.from_rows(ZZ, [[2]])], ZZ)
    assert groups[0].is_zero
    assert groups[1].free_rank == 0 and groups[1].torsion_invariants == (2,)


def test_cohomology_over_non_field_refused():
    with pytest.raises(ValueError):
        complex_cohomology([Matrix.from_rows(parse_ring_spec("Z/4"), [[1]])], parse_ring_spec("Z/4"))


def test_matrix_json_round_trip():
    M = Matrix.from_rows(QQ, [[Fraction(1, 2), 3]])
    assert Matrix.from_json(M.to_json()) == M
