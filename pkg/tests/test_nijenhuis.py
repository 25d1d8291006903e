import pytest

from modules.algcore import Algebra, LinearMap, associator
from modules.errors import CharacteristicObstruction
from modules.identities import (
    check,
    check_homomorphism,
    check_identity,
    check_pre_anti_flexible,
    left_sym_from_pre,
)
from modules.nijenhuis import (
    NJ_EXPANSION,
    check_nijenhuis,
    check_nj_condition,
    complex_structure,
    lie_double,
    lie_double_with_complex_structure,
    nijenhuis_torsion,
    nj_associator_expansion,
    nj_induced_product,
    nj_left_symmetric,
    nj_power_suite,
    nj_pre_anti_flexible,
    nj_rb_bridge,
)


@pytest.fixture
def N(D_rb):
    return D_rb.map


# ----------------------------------------------------------------------
# 判定・変形積
# ----------------------------------------------------------------------
def test_nijenhuis_on_dual_numbers(D, N):
    assert check_nijenhuis(D, N).passed
    assert nijenhuis_torsion(D, N, D.basis(0), D.basis(0)).is_zero()


def test_identity_is_nijenhuis(E, Q):
    ident = LinearMap.identity(Q, 2)
    assert check_nijenhuis(E, ident).passed
    assert nj_induced_product(E, ident) == E


def test_non_nijenhuis(E, Q):
    M = LinearMap(Q, Q.array([[0, 1], [0, 0]]))
    report = check_nijenhuis(E, M)
    assert not report.passed
    x, y = (E.basis(i) for i in report.witness.indices)
    assert nijenhuis_torsion(E, M, x, y) == report.witness.discrepancy


def test_induced_product_anti_flexible(D, N):
    induced = nj_induced_product(D, N)
    assert check_identity(induced, "anti_flexible").passed
    assert check_homomorphism(induced, D, N).passed


def test_expansion_with_identity_is_plain_associator(E, Q):
    ident = LinearMap.identity(Q, 2)
    x, y, z = E.basis(0), E.basis(1), E.basis(0)
    assert nj_associator_expansion(E, ident, x, y, z) == associator(E, x, y, z)


def test_expansion_identity(D, N, E, Q):
    for A, M in ((D, N), (E, LinearMap.identity(Q, 2))):
        induced = nj_induced_product(A, M)
        ops = {"mul": A.c, "ind": induced.c, "N": M.matrix}
        assert check(NJ_EXPANSION, ops, (2, 2, 2), A.field).passed


# ----------------------------------------------------------------------
# pre-anti-flexible 分解
# ----------------------------------------------------------------------
def test_pair_agrees_with_condition(D, N, E, Q):
    assert check_pre_anti_flexible(nj_pre_anti_flexible(D, N)).passed
    assert check_nj_condition(D, N).passed
    ident = LinearMap.identity(Q, 2)
    assert not check_pre_anti_flexible(nj_pre_anti_flexible(E, ident)).passed
    assert not check_nj_condition(E, ident).passed


def test_left_symmetric_matches_pair(E, Q):
    M = LinearMap(Q, Q.array([[1, 2], [0, 3]]))
    assert nj_left_symmetric(E, M) == left_sym_from_pre(nj_pre_anti_flexible(E, M))


def test_half_needs_odd_characteristic(F2):
    A = Algebra.zero(F2, 2)
    with pytest.raises(CharacteristicObstruction):
        nj_pre_anti_flexible(A, LinearMap.identity(F2, 2))


def test_characteristic_three_note(F3):
    A = Algebra.zero(F3, 2)
    report = check_nj_condition(A, LinearMap.identity(F3, 2))
    assert report.passed
    assert any("characteristic 3" in note for note in report.notes)


# ----------------------------------------------------------------------
# Rota-Baxter との対応
# ----------------------------------------------------------------------
def test_bridge_square_zero(D, N):
    report = nj_rb_bridge(D, N)
    assert report.applicable
    assert [case.condition for case in report.cases] == ["square_zero"]
    assert report.agrees


def test_bridge_identity(E, Q):
    report = nj_rb_bridge(E, LinearMap.identity(Q, 2))
    assert [case.condition for case in report.cases] == ["idempotent", "involution"]
    assert report.agrees
    assert report.to_json()["result"] == "agree"


def test_bridge_not_applicable(E, Q):
    M = LinearMap(Q, Q.array([[2, 0], [0, 3]]))
    report = nj_rb_bridge(E, M)
    assert not report.applicable
    assert report.to_json()["result"] == "not_applicable"


def test_power_suite(D, N):
    suite = nj_power_suite(D, N, 2)
    assert suite.kind == "nijenhuis"
    assert len(suite.verdicts) == 18


# ----------------------------------------------------------------------
# 複素構造
# ----------------------------------------------------------------------
def test_complex_structure_squares_to_minus_one(Q):
    J = complex_structure(Q, 2)
    assert J @ J == -LinearMap.identity(Q, 4)


def test_double_of_commutative_algebra(D, Q):
    double, J, report = lie_double_with_complex_structure(D)
    assert double == Algebra.zero(Q, 4)
    assert report.passed


def test_double_of_E_fails_integrability(E):
    double, _, report = lie_double_with_complex_structure(E)
    assert check_identity(double, "lie").passed
    assert not report.passed
    assert lie_double(E).dim == 4


def test_double_needs_odd_characteristic(F2):
    with pytest.raises(CharacteristicObstruction):
        lie_double_with_complex_structure(Algebra.zero(F2, 2))
