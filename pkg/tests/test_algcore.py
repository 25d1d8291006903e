from fractions import Fraction

from hypothesis import given, strategies as st
import numpy as np
import pytest

from modules.algcore import (
    Algebra,
    BilinearForm,
    CheckReport,
    DirectSum,
    LinearMap,
    ProductVariant,
    Vector,
    associator,
    check_span_closed,
    commutator_algebra,
    compare_products,
    determinant,
    direct_product_algebra,
    left_mult,
    multiply,
    opposite,
    rank,
    right_mult,
    scalar_product_algebra,
    solve,
)
from modules.errors import ConstraintViolated, DimensionMismatch, FieldMismatch, SingularForm
from modules.exactfield import FieldSpec
from modules.identities import check_identity


def vec(field, *coords):
    return Vector(field, field.array(list(coords)))


# ----------------------------------------------------------------------
# 積と結合子
# ----------------------------------------------------------------------
def test_multiply_fixture_E(E, Q):
    e1, e2 = E.basis(0), E.basis(1)
    assert multiply(E, e2, e1) == e1
    assert multiply(E, e1, e2) == Vector.zero(Q, 2)
    assert multiply(E, e1, e1) == e1
    assert multiply(E, e2, e2) == e2


def test_zero_algebra_products(Q):
    A = Algebra.zero(Q, 3)
    x = vec(Q, 1, 2, 3)
    assert multiply(A, x, x).is_zero()
    assert associator(A, x, x, x).is_zero()


def test_associator_vanishes_on_dual_numbers(D):
    for i in range(2):
        for j in range(2):
            for k in range(2):
                assert associator(D, D.basis(i), D.basis(j), D.basis(k)).is_zero()


def test_associator_of_E(E, Q):
    e1, e2 = E.basis(0), E.basis(1)
    assert associator(E, e1, e1, e2).is_zero()
    assert associator(E, e1, e2, e1) == vec(Q, -1, 0)


def test_dimension_and_field_mismatch(E, Q, F5):
    with pytest.raises(DimensionMismatch):
        multiply(E, vec(Q, 1, 0, 0), E.basis(0))
    with pytest.raises(FieldMismatch):
        multiply(E, vec(F5, 1, 0), E.basis(0))


rational_vectors = st.lists(st.fractions(max_denominator=20), min_size=2, max_size=2)


@given(rational_vectors, rational_vectors, rational_vectors, st.fractions(max_denominator=20))
def test_multiply_is_bilinear(a, b, c, t):
    Q = FieldSpec.rationals()
    A = Algebra.from_table(Q, 2, {(0, 0): {0: 1, 1: 2}, (0, 1): {1: "1/3"}, (1, 1): {0: -1}})
    x, y, z = Vector(Q, a), Vector(Q, b), Vector(Q, c)
    assert multiply(A, x + y, z) == multiply(A, x, z) + multiply(A, y, z)
    assert multiply(A, x, y + z) == multiply(A, x, y) + multiply(A, x, z)
    assert multiply(A, x.scale(t), y) == multiply(A, x, y).scale(t)


# ----------------------------------------------------------------------
# 反対代数・交換子・スカラー積代数
# ----------------------------------------------------------------------
def test_opposite_of_E(E, E_op, Q):
    expected = Algebra.from_table(Q, 2, {(0, 0): {0: 1}, (0, 1): {0: 1}, (1, 1): {1: 1}})
    assert opposite(E) == expected
    assert E_op == expected
    assert opposite(opposite(E)) == E


def test_opposite_of_commutative(D, Q):
    assert opposite(D) == D
    assert opposite(Algebra.zero(Q, 2)) == Algebra.zero(Q, 2)


def test_commutator_of_E(E, Q):
    K = commutator_algebra(E)
    e1, e2 = K.basis(0), K.basis(1)
    assert multiply(K, e1, e2) == vec(Q, -1, 0)
    assert multiply(K, e2, e1) == e1
    assert multiply(K, e1, e1).is_zero()


def test_commutator_of_commutative_is_zero(D, Q):
    assert commutator_algebra(D) == Algebra.zero(Q, 2)


def test_scalar_product_variants(E, Q):
    form = BilinearForm(Q, Q.eye(2))
    c = Vector.basis(Q, 2, 0)
    L = vec(Q, 0, 1)
    assert scalar_product_algebra(form, c, L, ProductVariant.LEFT) == E
    assert scalar_product_algebra(form, c, L, ProductVariant.RIGHT) == opposite(E)
    zero = Vector.zero(Q, 2)
    assert scalar_product_algebra(form, zero, zero) == Algebra.zero(Q, 2)


def test_scalar_product_requires_l_of_c_zero(Q):
    form = BilinearForm(Q, Q.eye(2))
    with pytest.raises(ConstraintViolated):
        scalar_product_algebra(form, Vector.basis(Q, 2, 0), vec(Q, 1, 0))


def test_multiplication_operators(E, Q):
    e1, e2 = E.basis(0), E.basis(1)
    assert left_mult(E, e2) == LinearMap.identity(Q, 2)
    assert right_mult(E, e1) == LinearMap(Q, Q.array([[1, 1], [0, 0]]))
    x = vec(Q, 2, "1/2")
    assert left_mult(E, e1)(x) == multiply(E, e1, x)


# ----------------------------------------------------------------------
# 線形写像・直和
# ----------------------------------------------------------------------
def test_linear_map_algebra(Q):
    M = LinearMap(Q, Q.array([[0, 1], [0, 0]]))
    assert M @ M == LinearMap.zero(Q, 2, 2)
    assert M.power(0) == LinearMap.identity(Q, 2)
    assert (M + M).scale(Fraction(1, 2)) == M
    assert M.transpose() == LinearMap(Q, Q.array([[0, 0], [1, 0]]))


def test_block_map(Q):
    ident = LinearMap.identity(Q, 1)
    zero = LinearMap.zero(Q, 1, 1)
    J = LinearMap.block(Q, [[zero, -ident], [ident, zero]])
    assert J @ J == -LinearMap.identity(Q, 2)


def test_direct_sum_embedding(Q):
    S = DirectSum((2, 1))
    v = vec(Q, 1, 2)
    w = vec(Q, 3)
    joined = S.join(v, w)
    assert joined == vec(Q, 1, 2, 3)
    assert S.project(0, joined) == v
    assert S.embed(1, w) == vec(Q, 0, 0, 3)


def test_direct_product_algebra(D, E):
    P = direct_product_algebra(D, E)
    assert P.dim == 4
    assert np.all(P.c[:2, 2:, :] == 0)
    assert np.all(P.c[2:, 2:, 2:] == E.c)


# ----------------------------------------------------------------------
# 厳密線形代数
# ----------------------------------------------------------------------
def test_determinant_rank_solve(Q, F5):
    M = [[1, 2], [3, 4]]
    assert determinant(Q, M) == Fraction(-2)
    assert determinant(F5, M) == 3
    assert rank(Q, [[1, 2], [2, 4]]) == 1
    x = solve(Q, [[2, 1], [1, 1]], [3, 2])
    assert x.tolist() == [Fraction(1), Fraction(1)]
    y = solve(F5, [[2, 1], [1, 1]], [3, 2])
    assert y.tolist() == [1, 1]


def test_solve_singular(Q):
    with pytest.raises(SingularForm):
        solve(Q, [[1, 2], [2, 4]], [1, 1])


# ----------------------------------------------------------------------
# 部分空間の閉性・積の比較
# ----------------------------------------------------------------------
def test_span_closed(E, Q):
    assert check_span_closed(E, [E.basis(0)]).passed
    assert check_span_closed(E, [E.basis(1)]).passed
    report = check_span_closed(E, [vec(Q, 1, 1)])
    assert not report.passed
    assert report.witness.indices == (0, 0)
    assert check_span_closed(E, []).passed


def test_compare_products(E, E_op):
    assert compare_products("same", E, E).passed
    report = compare_products("op", E, E_op)
    assert not report.passed
    assert report.witness.indices == (0, 1)


def test_report_shape():
    with pytest.raises(ValueError):
        CheckReport(True, "x", witness=object())
    assert CheckReport.ok("x").to_json() == {"identity": "x", "result": "pass"}
    assert not CheckReport(False, "x")


# ----------------------------------------------------------------------
# 大きな素数
# ----------------------------------------------------------------------
@pytest.mark.parametrize("p", [2 ** 31 - 1, 2 ** 61 - 1])
def test_large_prime_products_are_exact(p):
    F = FieldSpec.prime(p)
    A = Algebra(F, [[[p - 1]]])
    x = vec(F, p - 1)
    # (-1)·(-1)·(-1) = -1
    assert multiply(A, x, x).coords.tolist() == [p - 1]
    assert associator(A, x, x, x).is_zero()
    assert check_identity(A, "associative").passed


@pytest.mark.parametrize("p", [2 ** 31 - 1, 2 ** 61 - 1])
def test_large_prime_witness(p):
    F = FieldSpec.prime(p)
    A = Algebra.from_table(F, 2, {(0, 0): {0: 1}, (1, 0): {0: 1}, (1, 1): {1: 1}})
    assert check_identity(A, "anti_flexible").passed
    report = check_identity(A, "associative")
    assert not report.passed
    assert report.witness.indices == (0, 1, 0)
    assert report.witness.discrepancy.to_strings() == [str(p - 1), "0"]


def test_wide_prime_uses_python_ints():
    assert not FieldSpec.prime(2 ** 31 - 1).wide
    F = FieldSpec.prime(2 ** 61 - 1)
    assert F.wide
    assert F.zeros(2).dtype == object
    row = F.array([[F.p - 1] * 3])
    assert F.einsum("ij,j->i", row, row[0]).tolist() == [3]
