"""Nijenhuis 作用素

  T_N(x, y) = N(x)·N(y) − N(N(x)·y + x·N(y) − N(x·y))

変形積、条件付きの pre-anti-flexible 分解、Rota-Baxter 作用素との対応、
冪の性質、A⊕A 上の複素構造を扱う。
"""

from dataclasses import dataclass
from fractions import Fraction

from modules.algcore import (
    Algebra,
    CheckReport,
    LinearMap,
    associator,
    commutator_algebra,
    first_failure,
    multiply,
    post_compose,
    pre_compose,
    same_field,
)
from modules.errors import CharacteristicObstruction, DimensionMismatch
from modules.identities import (
    X, Y, Z,
    Apply,
    Identity,
    PreAntiFlexible,
    Prod,
    assoc,
    check,
    check_identity,
    mapped,
    scaled,
)
from modules.rota import WeightedOperator, check_rota_baxter, run_power_suite


def _check_operator(A, N):
    same_field(A, N)
    if N.matrix.shape != (A.dim, A.dim):
        raise DimensionMismatch(f"operator {N.matrix.shape} on algebra of dimension {A.dim}")


def _n(v):
    return Apply("N", v)


NIJENHUIS = Identity.build(
    "nijenhuis", 2,
    (1, Prod("mul", _n(X), _n(Y))),
    (-1, _n(Prod("mul", _n(X), Y))),
    (-1, _n(Prod("mul", X, _n(Y)))),
    (1, _n(_n(Prod("mul", X, Y)))),
)


def nijenhuis_torsion(A, N, x, y):
    _check_operator(A, N)
    inner = multiply(A, N(x), y) + multiply(A, x, N(y)) - N(multiply(A, x, y))
    return multiply(A, N(x), N(y)) - N(inner)


def check_nijenhuis(A, N):
    _check_operator(A, N)
    return check(NIJENHUIS, {"mul": A.c, "N": N.matrix}, (A.dim, A.dim), A.field)


# ----------------------------------------------------------------------
# 変形積
# ----------------------------------------------------------------------
def nj_induced_tensor(field, c, N):
    """x ·_N y = N(x)·y + x·N(y) − N(x·y)（バッチ可）"""
    return field.reduce(pre_compose(field, c, left=N) + pre_compose(field, c, right=N)
                        - post_compose(field, N, c))


def nj_induced_product(A, N):
    _check_operator(A, N)
    return Algebra(A.field, nj_induced_tensor(A.field, A.c, N.matrix), A.labels)


def nj_associator_expansion(A, N, x, y, z):
    """変形積の結合子を元の結合子で表した7項の右辺"""
    _check_operator(A, N)
    return (associator(A, N(x), N(y), z)
            + associator(A, N(x), y, N(z))
            + associator(A, x, N(y), N(z))
            + N(N(associator(A, x, y, z)))
            - N(associator(A, N(x), y, z))
            - N(associator(A, x, N(y), z))
            - N(associator(A, x, y, N(z))))


NJ_EXPANSION = Identity.build(
    "nj_associator_expansion", 3,
    assoc(X, Y, Z, op="ind"),
    scaled(-1, assoc(_n(X), _n(Y), Z)),
    scaled(-1, assoc(_n(X), Y, _n(Z))),
    scaled(-1, assoc(X, _n(Y), _n(Z))),
    scaled(-1, mapped("N", mapped("N", assoc(X, Y, Z)))),
    mapped("N", assoc(_n(X), Y, Z)),
    mapped("N", assoc(X, _n(Y), Z)),
    mapped("N", assoc(X, Y, _n(Z))),
)


def _half(field):
    return field.coefficient(Fraction(1, 2))


def nj_pair_tensors(field, c, N):
    """x≻y = N(x)·y − ½N(x·y),  x≺y = x·N(y) − ½N(x·y)（バッチ可）"""
    h = _half(field)
    shifted = field.scale(post_compose(field, N, c), h)
    succ = field.reduce(pre_compose(field, c, left=N) - shifted)
    prec = field.reduce(pre_compose(field, c, right=N) - shifted)
    return prec, succ


def nj_pre_anti_flexible(A, N):
    _check_operator(A, N)
    prec, succ = nj_pair_tensors(A.field, A.c, N.matrix)
    return PreAntiFlexible(A.field, prec, succ)


def nj_condition_identity(field):
    """(3/2)N(N(z·y)·x + x·N(y·z)) − N²((z·y)·x + x·(y·z))"""
    three_halves = field.coefficient(Fraction(3, 2))
    return Identity.build(
        "nj_condition", 3,
        (three_halves, _n(Prod("mul", _n(Prod("mul", Z, Y)), X))),
        (three_halves, _n(Prod("mul", X, _n(Prod("mul", Y, Z))))),
        (-1, _n(_n(Prod("mul", Prod("mul", Z, Y), X)))),
        (-1, _n(_n(Prod("mul", X, Prod("mul", Y, Z))))),
    )


def check_nj_condition(A, N):
    _check_operator(A, N)
    notes = ()
    if A.field.characteristic == 3:
        notes = ("characteristic 3: the 3/2 side vanishes identically",)
    report = check(nj_condition_identity(A.field), {"mul": A.c, "N": N.matrix},
                   (A.dim,) * 3, A.field)
    return CheckReport(report.passed, report.identity, report.witness, report.clause, notes)


def nj_left_symmetric(A, N):
    """x∘y = [N(x), y] − ½N([x, y])"""
    _check_operator(A, N)
    f = A.field
    K = commutator_algebra(A).c
    t = pre_compose(f, K, left=N.matrix) - f.scale(post_compose(f, N.matrix, K), _half(f))
    return Algebra(f, f.reduce(t), A.labels)


# ----------------------------------------------------------------------
# Rota-Baxter との対応
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class BridgeCase:
    condition: str
    nijenhuis: CheckReport
    rota_baxter: tuple

    @property
    def agrees(self):
        rb = all(r.passed for r in self.rota_baxter)
        return rb == self.nijenhuis.passed

    def to_json(self):
        return {
            "condition": self.condition,
            "nijenhuis": self.nijenhuis.to_json(),
            "rota_baxter": [r.to_json() for r in self.rota_baxter],
            "agrees": self.agrees,
        }


@dataclass(frozen=True)
class BridgeReport:
    cases: tuple

    @property
    def applicable(self):
        return bool(self.cases)

    @property
    def agrees(self):
        return all(case.agrees for case in self.cases)

    def to_json(self):
        if not self.applicable:
            return {"result": "not_applicable", "cases": []}
        return {"result": "agree" if self.agrees else "disagree",
                "cases": [case.to_json() for case in self.cases]}


def nj_rb_bridge(A, N):
    """N² ∈ {0, N, Id} の各場合で Nijenhuis ⇔ Rota-Baxter を両側から評価"""
    _check_operator(A, N)
    f = A.field
    n = A.dim
    square = N @ N
    ident = LinearMap.identity(f, n)
    zero = LinearMap.zero(f, n, n)
    cases = []
    nij = check_nijenhuis(A, N)
    if square == zero:
        cases.append(BridgeCase("square_zero", nij,
                                (check_rota_baxter(A, WeightedOperator(N, 0)),)))
    if square == N:
        cases.append(BridgeCase("idempotent", nij,
                                (check_rota_baxter(A, WeightedOperator(N, -1)),)))
    if square == ident:
        cases.append(BridgeCase("involution", nij, (
            check_rota_baxter(A, WeightedOperator(N + ident, -2)).renamed("rota_baxter_plus"),
            check_rota_baxter(A, WeightedOperator(N - ident, 2)).renamed("rota_baxter_minus"),
        )))
    return BridgeReport(tuple(cases))


def nj_power_suite(A, N, maxpq):
    _check_operator(A, N)
    return run_power_suite(
        "nijenhuis", A, maxpq,
        induced=lambda B, k: nj_induced_product(B, N.power(k)),
        operator_check=lambda B, k: check_nijenhuis(B, N.power(k)),
        power=lambda k: N.power(k),
    )


# ----------------------------------------------------------------------
# 複素構造
# ----------------------------------------------------------------------
def _j(v):
    return Apply("J", v)


J_SQUARED = Identity.build("j_squared", 1, (1, _j(_j(X))), (1, X))

INTEGRABILITY = Identity.build(
    "integrability", 2,
    (1, _j(Prod("mul", X, Y))),
    (-1, Prod("mul", _j(X), Y)),
    (-1, Prod("mul", X, _j(Y))),
    (-1, _j(Prod("mul", _j(X), _j(Y)))),
)


def lie_double(A):
    """A⊕A 上の括弧 [x+a, y+b] = [x,y] + (L−R)(x)b − (L−R)(y)a"""
    f = A.field
    n = A.dim
    K = commutator_algebra(A).c
    c = f.zeros((2 * n, 2 * n, 2 * n))
    c[:n, :n, :n] = K
    c[:n, n:, n:] = K
    c[n:, :n, n:] = K
    return Algebra(f, c)


def complex_structure(field, n):
    """J(u, v) = (−v, u)"""
    ident = LinearMap.identity(field, n)
    zero = LinearMap.zero(field, n, n)
    return LinearMap.block(field, [[zero, -ident], [ident, zero]])


def lie_double_with_complex_structure(A):
    if A.field.characteristic == 2:
        raise CharacteristicObstruction("a complex structure needs characteristic other than 2")
    double = lie_double(A)
    J = complex_structure(A.field, A.dim)
    dims = double.dim
    report = first_failure("complex_structure", [
        check_identity(double, "lie"),
        check(J_SQUARED, {"J": J.matrix}, (dims,), A.field),
        check(INTEGRABILITY, {"mul": double.c, "J": J.matrix}, (dims, dims), A.field),
    ])
    return double, J, report

