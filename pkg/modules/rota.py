"""重み λ の Rota-Baxter 作用素

  R(a)·R(b) = R(a·R(b) + R(a)·b) + λR(a·b)

誘導積・誘導 pre-anti-flexible 構造・グラフによる特徴づけ・射・冪の性質を扱う。
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from modules.algcore import (
    Algebra,
    CheckReport,
    LinearMap,
    Vector,
    Witness,
    associator,
    check_span_closed,
    commutator_algebra,
    compare_products,
    direct_product_algebra,
    first_failure,
    pre_compose,
    same_field,
)
from modules.errors import DimensionMismatch
from modules.identities import (
    X, Y, Z,
    Apply,
    Identity,
    PreAntiFlexible,
    Prod,
    assoc,
    check,
    check_homomorphism,
    check_identity,
    check_pre_anti_flexible,
    scaled,
)


@dataclass(frozen=True, eq=False)
class WeightedOperator:
    """線形写像とその重み λ の組"""

    map: LinearMap
    weight: object = 0

    def __post_init__(self):
        if not self.map.is_square:
            raise DimensionMismatch(f"operator must be square, got {self.map.matrix.shape}")
        object.__setattr__(self, "weight", self.map.field.element(self.weight))

    @property
    def field(self):
        return self.map.field

    @property
    def matrix(self):
        return self.map.matrix

    @property
    def dim(self):
        return self.map.rows

    def power(self, k):
        """R^k（重みはそのまま）"""
        return WeightedOperator(self.map.power(k), self.weight)

    def __repr__(self):
        return f"WeightedOperator({self.map!r}, weight={self.field.format(self.weight)})"


def _check_operator(A, R):
    same_field(A, R.map)
    if R.dim != A.dim:
        raise DimensionMismatch(f"operator of size {R.dim} on algebra of dimension {A.dim}")


def half_weight(field, weight):
    """λ/2。λ ≠ 0 かつ標数2なら CharacteristicObstruction"""
    if weight == 0:
        return field.element(0)
    return field.element(weight * field.coefficient(Fraction(1, 2)))


# ----------------------------------------------------------------------
# 判定
# ----------------------------------------------------------------------
def rota_baxter_identity(weight):
    return Identity.build(
        "rota_baxter", 2,
        (1, Prod("mul", Apply("R", X), Apply("R", Y))),
        (-1, Apply("R", Prod("mul", X, Apply("R", Y)))),
        (-1, Apply("R", Prod("mul", Apply("R", X), Y))),
        (-weight, Apply("R", Prod("mul", X, Y))),
    )


def check_rota_baxter(A, R):
    _check_operator(A, R)
    return check(rota_baxter_identity(R.weight), {"mul": A.c, "R": R.matrix},
                 (A.dim, A.dim), A.field)


def check_lie_rota_baxter(A, R):
    """交換子積 [a, b] = a·b − b·a に対する Rota-Baxter 恒等式"""
    return check_rota_baxter(commutator_algebra(A), R).renamed("lie_rota_baxter")


def check_weight_condition(A, R):
    """λ²((a·b)·c + c·(b·a)) = 0"""
    _check_operator(A, R)
    if A.field.element(R.weight * R.weight) == 0:
        return CheckReport.ok("weight_condition", notes=("vacuous: weight squared is zero",))
    report = check_identity(A, "cyclic_condition")
    if report.passed:
        return CheckReport.ok("weight_condition")
    lam2 = A.field.element(R.weight * R.weight)
    w = report.witness
    return CheckReport(False, "weight_condition",
                       Witness(w.indices, w.discrepancy.scale(lam2)))


# ----------------------------------------------------------------------
# 誘導構造
# ----------------------------------------------------------------------
def rb_induced_tensor(field, c, R, weight):
    """a ·_R b = a·R(b) + R(a)·b + λ a·b（バッチ可）"""
    return field.reduce(pre_compose(field, c, right=R) + pre_compose(field, c, left=R)
                        + field.scale(c, weight))


def rb_induced_product(A, R):
    _check_operator(A, R)
    return Algebra(A.field, rb_induced_tensor(A.field, A.c, R.matrix, R.weight), A.labels)


def rb_associator_expansion(A, R, x, y, z):
    """誘導積の結合子を元の結合子の7項で表した右辺"""
    _check_operator(A, R)
    r = R.map
    lam = R.weight
    total = (associator(A, x, r(y), r(z))
             + associator(A, r(x), y, r(z))
             + associator(A, r(x), r(y), z))
    if lam != 0:
        total = (total
                 + (associator(A, r(x), y, z)
                    + associator(A, x, r(y), z)
                    + associator(A, x, y, r(z))).scale(lam)
                 + associator(A, x, y, z).scale(lam * lam))
    return total


def rb_expansion_identity(weight):
    """[x,y,z]_R − (7項展開)。'ind' に誘導積を渡す"""
    def R(v):
        return Apply("R", v)

    return Identity.build(
        "rb_associator_expansion", 3,
        assoc(X, Y, Z, op="ind"),
        scaled(-1, assoc(X, R(Y), R(Z))),
        scaled(-1, assoc(R(X), Y, R(Z))),
        scaled(-1, assoc(R(X), R(Y), Z)),
        scaled(-weight, assoc(R(X), Y, Z)),
        scaled(-weight, assoc(X, R(Y), Z)),
        scaled(-weight, assoc(X, Y, R(Z))),
        scaled(-weight * weight, assoc(X, Y, Z)),
    )


def rb_pair_tensors(field, c, R, weight):
    """a≺b = a·R(b) + (λ/2)a·b,  a≻b = R(a)·b + (λ/2)a·b（バッチ可）"""
    h = half_weight(field, weight)
    prec = field.reduce(pre_compose(field, c, right=R) + field.scale(c, h))
    succ = field.reduce(pre_compose(field, c, left=R) + field.scale(c, h))
    return prec, succ


def rb_pre_anti_flexible(A, R):
    _check_operator(A, R)
    prec, succ = rb_pair_tensors(A.field, A.c, R.matrix, R.weight)
    return PreAntiFlexible(A.field, prec, succ)


def _bracket_tensor(A):
    return commutator_algebra(A).c


def rb_left_symmetric(A, R):
    """a∗b = [R(a), b] + (λ/2)[a, b]"""
    _check_operator(A, R)
    f = A.field
    K = _bracket_tensor(A)
    h = half_weight(f, R.weight)
    return Algebra(f, f.reduce(pre_compose(f, K, left=R.matrix) + f.scale(K, h)), A.labels)


def rb_right_symmetric(A, R):
    """a⋆b = [a, R(b)] + (λ/2)[a, b]"""
    _check_operator(A, R)
    f = A.field
    K = _bracket_tensor(A)
    h = half_weight(f, R.weight)
    return Algebra(f, f.reduce(pre_compose(f, K, right=R.matrix) + f.scale(K, h)), A.labels)


# ----------------------------------------------------------------------
# グラフ
# ----------------------------------------------------------------------
def rb_graph_algebra(A, R):
    """A⊕A 上の積 (u,a)∗(v,b) = (u·v, a·v + u·b + λa·b) と生成元 (R(e_i), e_i)"""
    _check_operator(A, R)
    f = A.field
    n = A.dim
    c = f.zeros((2 * n, 2 * n, 2 * n))
    c[:n, :n, :n] = A.c
    c[n:, :n, n:] = A.c
    c[:n, n:, n:] = A.c
    c[n:, n:, n:] = f.scale(A.c, R.weight)
    ambient = Algebra(f, c)
    gens = [Vector(f, np.concatenate([R.matrix[:, i], f.eye(n)[i]])) for i in range(n)]
    return ambient, gens


def rb_graph_check(A, R):
    ambient, gens = rb_graph_algebra(A, R)
    return check_span_closed(ambient, gens, identity="rb_graph")


# ----------------------------------------------------------------------
# 射
# ----------------------------------------------------------------------
INTERTWINING = Identity.build(
    "intertwining", 1,
    (1, Apply("phi", Apply("R", X))),
    (-1, Apply("R2", Apply("phi", X))),
)


def check_intertwining(phi, R, R2):
    """φ∘R = R'∘φ を基底ごとに判定"""
    return check(INTERTWINING, {"phi": phi.matrix, "R": R.matrix, "R2": R2.matrix},
                 (phi.cols,), phi.field)


def _weight_mismatch(identity, field, w1, w2):
    diff = Vector(field, field.array([field.element(w1 - w2)]))
    return CheckReport(False, identity, Witness((), diff), clause="weight")


def check_rb_morphism(src, dst, phi):
    """src = (A, R), dst = (A', R')。重みが異なれば clause='weight' で失敗"""
    A, R = src
    A2, R2 = dst
    _check_operator(A, R)
    _check_operator(A2, R2)
    field = same_field(A, A2, phi)
    if R.weight != R2.weight:
        return _weight_mismatch("rb_morphism", field, R.weight, R2.weight)
    return first_failure("rb_morphism", [
        check_homomorphism(A, A2, phi),
        check_intertwining(phi, R, R2),
    ])


def rb_morphism_graph_check(src, dst, phi):
    """{((R(a), a), (φR(a), φ(a)))} が二つのグラフ代数の直積で閉じるか"""
    A, R = src
    A2, R2 = dst
    amb1, _ = rb_graph_algebra(A, R)
    amb2, _ = rb_graph_algebra(A2, R2)
    field = same_field(A, A2, phi)
    ambient = direct_product_algebra(amb1, amb2)
    n = A.dim
    eye = field.eye(n)
    phiR = field.einsum("ij,jk->ik", phi.matrix, R.matrix)
    gens = [Vector(field, np.concatenate([R.matrix[:, i], eye[i], phiR[:, i], phi.matrix[:, i]]))
            for i in range(n)]
    return check_span_closed(ambient, gens, identity="rb_morphism_graph")


# ----------------------------------------------------------------------
# 逆向きの主張
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class ConverseReport:
    """仮定・誘導対・作用素の判定を並べたもの"""

    hypothesis: CheckReport
    pair: CheckReport
    operator: CheckReport

    @property
    def applicable(self):
        return self.hypothesis.passed

    @property
    def agrees(self):
        return (not self.applicable) or self.pair.passed == self.operator.passed

    def to_json(self):
        return {
            "hypothesis": self.hypothesis.to_json(),
            "pair": self.pair.to_json(),
            "operator": self.operator.to_json(),
            "applicable": self.applicable,
            "agrees": self.agrees,
        }


def rb_converse_report(A, R):
    """(a·b)·c + c·(b·a) = 0 のもとで、誘導対が pre-anti-flexible ⇔ R が Rota-Baxter"""
    return ConverseReport(
        hypothesis=check_identity(A, "cyclic_condition"),
        pair=check_pre_anti_flexible(rb_pre_anti_flexible(A, R)),
        operator=check_rota_baxter(A, R),
    )


# ----------------------------------------------------------------------
# 冪の性質
# ----------------------------------------------------------------------
# 一次結合の係数の標本。恒等式は α, β それぞれについて高々3次なので
# 相異なる4点（p ≤ 3 では体の全元）で判定できる
COMPATIBILITY_SAMPLES = (0, 1, 2, -1)


@dataclass(frozen=True)
class ClaimVerdict:
    claim: str
    p: int
    q: int | None
    report: CheckReport

    def to_json(self):
        out = {"claim": self.claim, "p": self.p, "report": self.report.to_json()}
        if self.q is not None:
            out["q"] = self.q
        return out


@dataclass(frozen=True)
class SuiteReport:
    """冪に関する主張の実測結果（主張を仮定しない）"""

    kind: str
    maxpq: int
    verdicts: tuple

    @property
    def passed(self):
        return all(v.report.passed for v in self.verdicts)

    def failures(self):
        return [v for v in self.verdicts if not v.report.passed]

    def summary(self):
        out = {}
        for v in self.verdicts:
            entry = out.setdefault(v.claim, {"checked": 0, "failed": 0})
            entry["checked"] += 1
            entry["failed"] += 0 if v.report.passed else 1
        return out

    def to_json(self):
        return {
            "kind": self.kind,
            "maxpq": self.maxpq,
            "result": "pass" if self.passed else "fail",
            "summary": self.summary(),
            "failures": [v.to_json() for v in self.failures()],
        }


def compatibility_report(A, first, second, identity="compatibility"):
    """α·first + β·second が anti-flexible か（標本点で判定）"""
    f = A.field
    for alpha in COMPATIBILITY_SAMPLES:
        for beta in COMPATIBILITY_SAMPLES:
            combo = Algebra(f, f.reduce(f.scale(first.c, alpha) + f.scale(second.c, beta)))
            report = check_identity(combo, "anti_flexible")
            if not report.passed:
                return CheckReport(False, identity, report.witness,
                                   clause=f"alpha={alpha},beta={beta}")
    return CheckReport.ok(identity)


def run_power_suite(kind, A, maxpq, induced, operator_check, power):
    """冪 p, q ∈ [1, maxpq] について5つの主張を評価する

    induced(B, k): B 上で k 乗の作用素が誘導する積
    operator_check(B, k): k 乗の作用素が B 上でその種類の作用素か
    power(k): k 乗の作用素の LinearMap
    """
    if maxpq < 1:
        raise ValueError("maxpq must be at least 1")
    verdicts = []
    products = {k: induced(A, k) for k in range(1, 2 * maxpq + 1)}
    for p in range(1, maxpq + 1):
        Pp = products[p]
        verdicts.append(ClaimVerdict("anti_flexible", p, None, check_identity(Pp, "anti_flexible")))
        for q in range(1, maxpq + 1):
            verdicts.append(ClaimVerdict("operator", p, q, operator_check(Pp, q)))
            verdicts.append(ClaimVerdict(
                "coincidence", p, q,
                compare_products("coincidence", induced(Pp, q), products[p + q])))
            verdicts.append(ClaimVerdict(
                "compatibility", p, q, compatibility_report(A, Pp, products[q])))
            verdicts.append(ClaimVerdict(
                "homomorphism", p, q, check_homomorphism(products[p + q], Pp, power(q))))
    return SuiteReport(kind, maxpq, tuple(verdicts))


def rb_power_suite(A, R, maxpq):
    """Rota-Baxter 作用素の冪。各冪は R と同じ重みを使う"""
    _check_operator(A, R)
    return run_power_suite(
        "rota_baxter", A, maxpq,
        induced=lambda B, k: rb_induced_product(B, R.power(k)),
        operator_check=lambda B, k: check_rota_baxter(B, R.power(k)),
        power=lambda k: R.map.power(k),
    )
