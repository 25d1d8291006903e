import pytest

from modules.algcore import Algebra, LinearMap, associator, commutator_algebra
from modules.errors import CharacteristicObstruction, DimensionMismatch
from modules.fixtures import build_fixture
from modules.identities import (
    check,
    check_identity,
    check_pre_anti_flexible,
    left_sym_from_pre,
    right_sym_from_pre,
)
from modules.rota import (
    WeightedOperator,
    check_lie_rota_baxter,
    check_rb_morphism,
    check_rota_baxter,
    check_weight_condition,
    rb_associator_expansion,
    rb_converse_report,
    rb_expansion_identity,
    rb_graph_algebra,
    rb_graph_check,
    rb_induced_product,
    rb_left_symmetric,
    rb_power_suite,
    rb_pre_anti_flexible,
    rb_right_symmetric,
)


# ----------------------------------------------------------------------
# 判定
# ----------------------------------------------------------------------
def test_fixture_operator_is_rota_baxter(D, D_rb):
    assert check_rota_baxter(D, D_rb).passed


def test_identity_has_weight_minus_one(E, identity_rb, Q):
    assert check_rota_baxter(E, identity_rb).passed
    assert not check_rota_baxter(E, WeightedOperator(LinearMap.identity(Q, 2), 0)).passed


def test_zero_operator_any_weight(E, Q):
    for lam in (0, 1, "2/3"):
        assert check_rota_baxter(E, WeightedOperator(LinearMap.zero(Q, 2, 2), lam)).passed


def test_operator_size_mismatch(E, Q):
    with pytest.raises(DimensionMismatch):
        check_rota_baxter(E, WeightedOperator(LinearMap.identity(Q, 3), 0))


def test_lie_rota_baxter(E, identity_rb, D, D_rb):
    assert check_lie_rota_baxter(E, identity_rb).passed
    assert check_lie_rota_baxter(D, D_rb).identity == "lie_rota_baxter"


# ----------------------------------------------------------------------
# 誘導積
# ----------------------------------------------------------------------
def test_induced_product_on_dual_numbers(D, D_rb, Q):
    induced = rb_induced_product(D, D_rb)
    assert induced == Algebra.from_table(Q, 2, {(0, 0): {1: 2}})
    assert check_identity(induced, "anti_flexible").passed


def test_induced_product_of_identity(E, identity_rb):
    assert rb_induced_product(E, identity_rb) == E


def test_associator_expansion(D, D_rb, E, identity_rb):
    for A, R in ((D, D_rb), (E, identity_rb)):
        induced = rb_induced_product(A, R)
        ops = {"mul": A.c, "ind": induced.c, "R": R.matrix}
        assert check(rb_expansion_identity(R.weight), ops, (2, 2, 2), A.field).passed
        x, y, z = A.basis(0), A.basis(1), A.basis(0)
        assert associator(induced, x, y, z) == rb_associator_expansion(A, R, x, y, z)


# ----------------------------------------------------------------------
# pre-anti-flexible 分解
# ----------------------------------------------------------------------
def test_induced_pair_matches_fixture(D, D_rb):
    P = rb_pre_anti_flexible(D, D_rb)
    assert P == build_fixture("P_D")
    assert check_pre_anti_flexible(P).passed
    assert check_weight_condition(D, D_rb).passed


def test_pair_fails_with_weight_condition(E, identity_rb):
    condition = check_weight_condition(E, identity_rb)
    assert not condition.passed
    assert not check_pre_anti_flexible(rb_pre_anti_flexible(E, identity_rb)).passed


def test_weight_condition_vacuous_at_zero(E, Q):
    report = check_weight_condition(E, WeightedOperator(LinearMap.zero(Q, 2, 2), 0))
    assert report.passed
    assert report.notes


def test_half_weight_in_characteristic_two(F2):
    A = Algebra.zero(F2, 2)
    R = WeightedOperator(LinearMap.identity(F2, 2), 1)
    with pytest.raises(CharacteristicObstruction):
        rb_pre_anti_flexible(A, R)
    rb_pre_anti_flexible(A, WeightedOperator(LinearMap.identity(F2, 2), 0))


def test_left_right_symmetric_agree_with_pair(E, identity_rb, D, D_rb):
    for A, R in ((E, identity_rb), (D, D_rb)):
        P = rb_pre_anti_flexible(A, R)
        assert rb_left_symmetric(A, R) == left_sym_from_pre(P)
        assert rb_right_symmetric(A, R) == right_sym_from_pre(P)


def test_left_symmetric_on_dual_numbers(D, D_rb):
    assert check_identity(rb_left_symmetric(D, D_rb), "left_symmetric").passed
    assert check_identity(rb_right_symmetric(D, D_rb), "right_symmetric").passed


# ----------------------------------------------------------------------
# グラフと射
# ----------------------------------------------------------------------
def test_graph_algebra(D, D_rb):
    ambient, gens = rb_graph_algebra(D, D_rb)
    assert ambient.dim == 4
    assert check_identity(ambient, "anti_flexible").passed
    assert [g.coords.tolist() for g in gens] == [[0, 1, 1, 0], [0, 0, 0, 1]]


def test_graph_characterisation(D, D_rb, Z, Q):
    assert rb_graph_check(D, D_rb).passed
    ident = WeightedOperator(LinearMap.identity(Q, 2), 0)
    assert not check_rota_baxter(Z, ident).passed
    assert not rb_graph_check(Z, ident).passed


def test_morphisms(D, D_rb, Q):
    ident = LinearMap.identity(Q, 2)
    assert check_rb_morphism((D, D_rb), (D, D_rb), ident).passed
    other = WeightedOperator(D_rb.map, 1)
    report = check_rb_morphism((D, D_rb), (D, other), ident)
    assert not report.passed
    assert report.clause == "weight"


def test_operator_is_morphism_from_induced(D, D_rb):
    induced = rb_induced_product(D, D_rb)
    assert check_rb_morphism((induced, D_rb), (D, D_rb), D_rb.map).passed


# ----------------------------------------------------------------------
# 逆向き・冪
# ----------------------------------------------------------------------
def test_converse_counterexample(Z, Q):
    """Z 上の恒等写像: 対は pre-anti-flexible だが Rota-Baxter ではない"""
    report = rb_converse_report(Z, WeightedOperator(LinearMap.identity(Q, 2), 0))
    assert report.applicable
    assert report.pair.passed
    assert not report.operator.passed
    assert not report.agrees
    assert report.to_json()["agrees"] is False


def test_converse_not_applicable(E, identity_rb):
    report = rb_converse_report(E, identity_rb)
    assert not report.applicable
    assert report.agrees


def test_power_suite_shape(D, D_rb):
    suite = rb_power_suite(D, D_rb, 2)
    assert len(suite.verdicts) == 2 * (1 + 4 * 2)
    assert suite.kind == "rota_baxter"
    assert set(suite.summary()) == {"anti_flexible", "operator", "coincidence",
                                    "compatibility", "homomorphism"}
    assert suite.to_json()["result"] in ("pass", "fail")


def test_power_suite_rejects_zero(D, D_rb):
    with pytest.raises(ValueError):
        rb_power_suite(D, D_rb, 0)


def test_commutator_of_induced(D, D_rb):
    assert check_identity(commutator_algebra(rb_induced_product(D, D_rb)), "lie").passed
