import numpy as np
import pytest

from modules.algcore import Algebra, LinearMap, commutator_algebra
from modules.errors import UnknownIdentity
from modules.identities import (
    ANTI_FLEXIBLE,
    PreAntiFlexible,
    algebra_holds,
    check,
    check_dendriform,
    check_homomorphism,
    check_identity,
    check_pair_morphism,
    check_pre_anti_flexible,
    evaluate,
    holds,
    identity_name,
    left_sym_from_pre,
    right_sym_from_pre,
    sum_algebra,
)
from modules.fixtures import build_fixture


# ----------------------------------------------------------------------
# 名前
# ----------------------------------------------------------------------
def test_identity_names():
    assert identity_name("anti-flexible") == "anti_flexible"
    assert identity_name("Center-Symmetric") == "anti_flexible"
    assert identity_name("pre-lie") == "left_symmetric"
    with pytest.raises(UnknownIdentity):
        identity_name("commutative-ish")


# ----------------------------------------------------------------------
# 代数の恒等式
# ----------------------------------------------------------------------
def test_fixture_E_is_anti_flexible(E, E_op):
    assert check_identity(E, "anti_flexible").passed
    assert check_identity(E_op, "anti_flexible").passed


def test_fixture_E_is_not_associative(E):
    report = check_identity(E, "associative")
    assert not report.passed
    assert report.witness.indices == (0, 1, 0)
    assert report.witness.discrepancy.to_strings() == ["-1", "0"]


def test_witness_reproduces_discrepancy(E):
    report = check_identity(E, "associative")
    i, j, k = report.witness.indices
    from modules.algcore import associator
    assert associator(E, E.basis(i), E.basis(j), E.basis(k)) == report.witness.discrepancy


def test_dual_numbers(D):
    for name in ("associative", "anti_flexible", "flexible", "left_symmetric", "right_symmetric"):
        assert check_identity(D, name).passed, name


def test_commutator_is_lie(E):
    assert check_identity(commutator_algebra(E), "lie").passed
    assert not check_identity(E, "lie").passed


def test_non_anti_flexible(W):
    report = check_identity(W, "anti_flexible")
    assert not report.passed
    assert report.identity == "anti_flexible"


def test_zero_dimension_is_vacuous(Q):
    A = Algebra.zero(Q, 0)
    for name in ("associative", "anti_flexible", "lie"):
        assert check_identity(A, name).passed


def test_batched_holds(F5):
    good = F5.zeros((2, 2, 2))
    bad = F5.array(np.zeros((2, 2, 2), dtype=np.int64))
    bad[0, 1, 0] = 1
    batch = np.stack([good, bad])
    assert algebra_holds(batch, "anti_flexible", F5).tolist() == [True, False]
    mask = holds(ANTI_FLEXIBLE, {"mul": batch}, (2, 2, 2), F5)
    assert mask.shape == (2,)


def test_evaluate_shape(E):
    val = evaluate(ANTI_FLEXIBLE, {"mul": E.c}, (2, 2, 2), E.field)
    assert val.shape == (2, 2, 2, 2)
    assert check(ANTI_FLEXIBLE, {"mul": E.c}, (2, 2, 2), E.field).passed


def test_homomorphism(E, E_op, Q):
    assert check_homomorphism(E, E, LinearMap.identity(Q, 2)).passed
    assert check_homomorphism(E, E_op, LinearMap.zero(Q, 2, 2)).passed
    assert not check_homomorphism(E, E_op, LinearMap.identity(Q, 2)).passed


# ----------------------------------------------------------------------
# 二つの積
# ----------------------------------------------------------------------
def test_pair_fixture():
    P = build_fixture("P_D")
    assert check_pre_anti_flexible(P).passed
    assert check_dendriform(P).passed


def test_pair_from_scaled_product(E):
    """≺ = ≻ = ½· は pre-anti-flexible の第二式で崩れる"""
    f = E.field
    half = f.scale(E.c, "1/2")
    P = PreAntiFlexible(f, half, half)
    report = check_pre_anti_flexible(P)
    assert not report.passed
    assert report.clause == "pre_anti_flexible_second"
    assert sum_algebra(P) == E


def test_zero_pair(Q):
    P = PreAntiFlexible.zero(Q, 2)
    assert check_pre_anti_flexible(P).passed
    assert left_sym_from_pre(P) == Algebra.zero(Q, 2)
    assert right_sym_from_pre(P) == Algebra.zero(Q, 2)


def test_derived_products_of_fixture_pair():
    P = build_fixture("P_D")
    assert check_identity(sum_algebra(P), "anti_flexible").passed
    assert check_identity(left_sym_from_pre(P), "left_symmetric").passed
    assert check_identity(right_sym_from_pre(P), "right_symmetric").passed


def test_pair_morphism_identity(Q):
    P = build_fixture("P_D")
    assert check_pair_morphism(P, P, LinearMap.identity(Q, 2)).passed
