"""双加群・半直積・O-作用素

作用は l(a, m) = am（左作用, 形 n×m×m）と r(m, a) = ma（右作用, 形 m×n×m）
に固定する。O-作用素 T: M → A は
  T(m)·T(n) = T(r(m, T(n)) + l(T(m), n))
を満たす線形写像。
"""

from dataclasses import dataclass

import numpy as np

from modules.algcore import (
    Algebra,
    LinearMap,
    Vector,
    check_span_closed,
    direct_product_algebra,
    first_failure,
    same_field,
)
from modules.errors import DimensionMismatch, PreconditionFailed
from modules.identities import (
    X, Y, Z,
    Apply,
    Identity,
    PreAntiFlexible,
    Prod,
    check,
    check_homomorphism,
)
from modules.rota import WeightedOperator


@dataclass(frozen=True, eq=False)
class Bimodule:
    """代数 A と、加群 M への左右の作用テンソル"""

    algebra: Algebra
    left: np.ndarray
    right: np.ndarray

    def __post_init__(self):
        field = self.algebra.field
        left = field.array(self.left)
        right = field.array(self.right)
        n = self.algebra.dim
        if left.ndim != 3 or right.ndim != 3:
            raise DimensionMismatch("action tensors must have rank 3")
        m = left.shape[1]
        if left.shape != (n, m, m) or right.shape != (m, n, m):
            raise DimensionMismatch(
                f"actions of shapes {left.shape} and {right.shape} over dimension {n}")
        left.setflags(write=False)
        right.setflags(write=False)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    @property
    def field(self):
        return self.algebra.field

    @property
    def dim(self):
        return self.algebra.dim

    @property
    def moddim(self):
        return self.left.shape[1]

    @property
    def ops(self):
        return {"mul": self.algebra.c, "l": self.left, "r": self.right}

    def __eq__(self, other):
        if not isinstance(other, Bimodule):
            return NotImplemented
        return (self.algebra == other.algebra and self.left.shape == other.left.shape
                and bool(np.all(self.left == other.left))
                and bool(np.all(self.right == other.right)))

    __hash__ = None


@dataclass(frozen=True, eq=False)
class ModuleOperator:
    """T: M → A（形 n×m）"""

    map: LinearMap

    @property
    def field(self):
        return self.map.field

    @property
    def matrix(self):
        return self.map.matrix


def _as_map(T):
    return T.map if isinstance(T, ModuleOperator) else T


def _check_operator(B, T):
    T = _as_map(T)
    same_field(B, T)
    if T.matrix.shape != (B.dim, B.moddim):
        raise DimensionMismatch(
            f"operator {T.matrix.shape} for algebra dimension {B.dim} and module dimension {B.moddim}")
    return T


# ----------------------------------------------------------------------
# 双加群
# ----------------------------------------------------------------------
# 変数: a = X, b = Y（A の元）, m = Z（M の元）
BIMODULE_FIRST = Identity.build(
    "bimodule_first", 3,
    (1, Prod("l", Prod("mul", X, Y), Z)),
    (-1, Prod("l", X, Prod("l", Y, Z))),
    (-1, Prod("r", Prod("r", Z, Y), X)),
    (1, Prod("r", Z, Prod("mul", Y, X))),
)

BIMODULE_SECOND = Identity.build(
    "bimodule_second", 3,
    (1, Prod("l", X, Prod("r", Z, Y))),
    (-1, Prod("r", Prod("l", X, Z), Y)),
    (-1, Prod("l", Y, Prod("r", Z, X))),
    (1, Prod("r", Prod("l", Y, Z), X)),
)


def check_bimodule(B):
    dims = (B.dim, B.dim, B.moddim)
    return first_failure("bimodule", [
        check(BIMODULE_FIRST, B.ops, dims, B.field, clause="bimodule_first"),
        check(BIMODULE_SECOND, B.ops, dims, B.field, clause="bimodule_second"),
    ])


def zero_bimodule(A, m):
    f = A.field
    return Bimodule(A, f.zeros((A.dim, m, m)), f.zeros((m, A.dim, m)))


def adjoint_bimodule(A):
    """M = A、左右の作用は A の積そのもの"""
    return Bimodule(A, A.c, A.c)


def dual_bimodule(A):
    """双対空間上の作用 l*(a, f)(b) = f(b·a), r*(f, a)(b) = f(a·b)"""
    return Bimodule(A, A.c.transpose(1, 2, 0), A.c.transpose(2, 0, 1))


def semidirect_product(B):
    """A⊕M 上の積 (a, m)∗(b, n) = (a·b, l(a, n) + r(m, b))"""
    f = B.field
    n, m = B.dim, B.moddim
    c = f.zeros((n + m, n + m, n + m))
    c[:n, :n, :n] = B.algebra.c
    c[:n, n:, n:] = B.left
    c[n:, :n, n:] = B.right
    labels = B.algebra.labels + tuple(f"f{i + 1}" for i in range(m))
    return Algebra(f, c, labels)


# ----------------------------------------------------------------------
# O-作用素
# ----------------------------------------------------------------------
def _t(v):
    return Apply("T", v)


O_OPERATOR = Identity.build(
    "o_operator", 2,
    (1, Prod("mul", _t(X), _t(Y))),
    (-1, _t(Prod("r", X, _t(Y)))),
    (-1, _t(Prod("l", _t(X), Y))),
)


def check_o_operator(B, T):
    T = _check_operator(B, T)
    ops = dict(B.ops, T=T.matrix)
    return check(O_OPERATOR, ops, (B.moddim, B.moddim), B.field)


def o_pair_tensors(field, left, right, T):
    """m≺n = r(m, T(n)),  m≻n = l(T(m), n)（バッチ可）"""
    prec = field.einsum("...aig,...ib->...abg", right, T)
    succ = field.einsum("...ia,...ibg->...abg", T, left)
    return prec, succ


def o_pre_anti_flexible(B, T):
    T = _check_operator(B, T)
    prec, succ = o_pair_tensors(B.field, B.left, B.right, T.matrix)
    return PreAntiFlexible(B.field, prec, succ)


def o_induced_module_algebra(B, T):
    """m⋆n = r(m, T(n)) + l(T(m), n)"""
    T = _check_operator(B, T)
    prec, succ = o_pair_tensors(B.field, B.left, B.right, T.matrix)
    return Algebra(B.field, B.field.reduce(prec + succ))


def o_graph_check(B, T):
    """{(T(m), m)} が半直積の部分代数か"""
    T = _check_operator(B, T)
    f = B.field
    ambient = semidirect_product(B)
    eye = f.eye(B.moddim)
    gens = [Vector(f, np.concatenate([T.matrix[:, a], eye[a]])) for a in range(B.moddim)]
    return check_span_closed(ambient, gens, identity="o_graph")


def o_left_symmetric(B, T):
    """m⋆n = l(T(m), n) − r(n, T(m))"""
    T = _check_operator(B, T)
    prec, succ = o_pair_tensors(B.field, B.left, B.right, T.matrix)
    return Algebra(B.field, B.field.reduce(succ - prec.transpose(1, 0, 2)))


def o_right_symmetric(B, T):
    """m∗n = r(n, T(m)) − l(T(m), n)"""
    T = _check_operator(B, T)
    prec, succ = o_pair_tensors(B.field, B.left, B.right, T.matrix)
    return Algebra(B.field, B.field.reduce(prec.transpose(1, 0, 2) - succ))


def extended_bimodule(B, T):
    """(M, ⋆) の A への作用

      l_T(m, a) = T(m)·a − T(r(m, a))
      r_T(a, m) = a·T(m) − T(l(a, m))
    """
    T = _check_operator(B, T)
    report = check_o_operator(B, T)
    if not report.passed:
        raise PreconditionFailed(f"not an O-operator (witness {report.witness.indices})")
    f = B.field
    c, Tm = B.algebra.c, T.matrix
    left = f.reduce(f.einsum("ia,ijk->ajk", Tm, c) - f.einsum("kb,ajb->ajk", Tm, B.right))
    right = f.reduce(f.einsum("ia,jik->jak", Tm, c) - f.einsum("kb,jab->jak", Tm, B.left))
    base = o_induced_module_algebra(B, T)
    return Bimodule(base, left, right)


# ----------------------------------------------------------------------
# 射
# ----------------------------------------------------------------------
O_INTERTWINING = Identity.build(
    "o_intertwining", 1,
    (1, Apply("phi", _t(X))),
    (-1, Apply("T2", Apply("psi", X))),
)

LEFT_EQUIVARIANCE = Identity.build(
    "left_equivariance", 2,
    (1, Apply("psi", Prod("l", X, Y))),
    (-1, Prod("l2", Apply("phi", X), Apply("psi", Y))),
)

RIGHT_EQUIVARIANCE = Identity.build(
    "right_equivariance", 2,
    (1, Apply("psi", Prod("r", X, Y))),
    (-1, Prod("r2", Apply("psi", X), Apply("phi", Y))),
)


def check_o_morphism(src, dst, phi, psi):
    """src = (B, T), dst = (B', T')。φ: A → A', ψ: M → M'"""
    B, T = src
    B2, T2 = dst
    T = _check_operator(B, T)
    T2 = _check_operator(B2, T2)
    field = same_field(B, B2, phi, psi)
    if psi.matrix.shape != (B2.moddim, B.moddim):
        raise DimensionMismatch(f"module map {psi.matrix.shape} between {B.moddim} and {B2.moddim}")
    ops = {
        "l": B.left, "r": B.right, "l2": B2.left, "r2": B2.right,
        "T": T.matrix, "T2": T2.matrix, "phi": phi.matrix, "psi": psi.matrix,
    }
    return first_failure("o_morphism", [
        check_homomorphism(B.algebra, B2.algebra, phi),
        check(O_INTERTWINING, ops, (B.moddim,), field),
        check(LEFT_EQUIVARIANCE, ops, (B.dim, B.moddim), field),
        check(RIGHT_EQUIVARIANCE, ops, (B.moddim, B.dim), field),
    ])


def o_morphism_graph_check(src, dst, phi, psi):
    """{((T(m), m), (φT(m), ψ(m)))} が二つの半直積の直積で閉じるか"""
    B, T = src
    B2, T2 = dst
    T = _check_operator(B, T)
    _check_operator(B2, T2)
    field = same_field(B, B2, phi, psi)
    ambient = direct_product_algebra(semidirect_product(B), semidirect_product(B2))
    eye = field.eye(B.moddim)
    phiT = field.einsum("ij,jk->ik", phi.matrix, T.matrix)
    gens = [Vector(field, np.concatenate([T.matrix[:, a], eye[a], phiT[:, a], psi.matrix[:, a]]))
            for a in range(B.moddim)]
    return check_span_closed(ambient, gens, identity="o_morphism_graph")


# ----------------------------------------------------------------------
# 半直積上の持ち上げ
# ----------------------------------------------------------------------
class LiftVariant:
    NILPOTENT = "Nilpotent"
    IDEMPOTENT = "Idempotent"


def lift_rb_from_o(B, T, weight):
    """R_T = [[0, T], [0, −λ Id]]"""
    T = _check_operator(B, T)
    f = B.field
    n, m = B.dim, B.moddim
    lam = f.element(weight)
    R = LinearMap.block(f, [
        [LinearMap.zero(f, n, n), T],
        [LinearMap.zero(f, m, n), LinearMap.identity(f, m).scale(-lam)],
    ])
    return WeightedOperator(R, lam)


def lift_nijenhuis_from_o(B, T, variant=LiftVariant.NILPOTENT):
    """N_T = [[0, T], [0, 0]] または [[0, T], [0, Id]]"""
    T = _check_operator(B, T)
    f = B.field
    n, m = B.dim, B.moddim
    if variant == LiftVariant.NILPOTENT:
        corner = LinearMap.zero(f, m, m)
    elif variant == LiftVariant.IDEMPOTENT:
        corner = LinearMap.identity(f, m)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return LinearMap.block(f, [
        [LinearMap.zero(f, n, n), T],
        [LinearMap.zero(f, m, n), corner],
    ])
