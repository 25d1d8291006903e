"""多重線形恒等式の判定エンジンと、二つの積をもつ代数（pre-anti-flexible 対）

恒等式は括弧付きの積と線形写像の適用からなる形式的な一次結合として書き、
すべての基底の組でまとめて評価する。変数 k には軸 k を割り当て、
評価結果は (バッチ..., d_0, ..., d_{a-1}, 出力次元) の配列になる。
反例は np.argwhere の行優先順（辞書式で最初）で選ぶ。
"""

from dataclasses import dataclass

import numpy as np

from modules.algcore import Algebra, CheckReport, Vector, Witness, first_failure, same_field
from modules.errors import DimensionMismatch, UnknownIdentity


# ----------------------------------------------------------------------
# 式
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Prod:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Apply:
    op: str
    arg: object


X, Y, Z = Var(0), Var(1), Var(2)


def assoc(a, b, c, op="mul"):
    """[a, b, c] を項のリストで返す"""
    return [(1, Prod(op, Prod(op, a, b), c)), (-1, Prod(op, a, Prod(op, b, c)))]


def scaled(coeff, terms):
    return [(coeff * k, e) for k, e in terms]


def mapped(op, terms):
    return [(k, Apply(op, e)) for k, e in terms]


@dataclass(frozen=True)
class Identity:
    """Σ coeff · expr = 0 という形の恒等式"""

    name: str
    arity: int
    terms: tuple

    @classmethod
    def build(cls, name, arity, *groups):
        terms = []
        for group in groups:
            if isinstance(group, tuple):
                terms.append(group)
            else:
                terms.extend(group)
        return cls(name, arity, tuple(terms))


# ----------------------------------------------------------------------
# 評価
# ----------------------------------------------------------------------
class _Evaluator:
    def __init__(self, field, ops, dims):
        self.field = field
        self.ops = ops
        self.dims = tuple(dims)
        self.arity = len(self.dims)
        self._cache = {}
        self.batch = ()

    def _op(self, name, core):
        key = (name, core)
        if key not in self._cache:
            if name not in self.ops:
                raise KeyError(f"operation {name!r} not supplied")
            t = np.asarray(self.ops[name])
            if t.ndim < core:
                raise DimensionMismatch(f"operation {name!r} has rank {t.ndim}, expected {core}")
            batch = t.shape[:-core]
            self.batch = np.broadcast_shapes(self.batch, batch)
            self._cache[key] = t.reshape(batch + (1,) * self.arity + t.shape[-core:])
        return self._cache[key]

    def register(self, expr):
        """式に現れる演算を登録し、バッチ形状を確定する"""
        if isinstance(expr, Prod):
            self._op(expr.op, 3)
            self.register(expr.left)
            self.register(expr.right)
        elif isinstance(expr, Apply):
            self._op(expr.op, 2)
            self.register(expr.arg)

    def leaf(self, k):
        d = self.dims[k]
        shape = [1] * self.arity + [d]
        shape[k] = d
        return self.field.eye(d).reshape(shape)

    def __call__(self, expr):
        f = self.field
        if isinstance(expr, Var):
            return self.leaf(expr.index)
        if isinstance(expr, Prod):
            left, right = self(expr.left), self(expr.right)
            t = self._op(expr.op, 3)
            if left.shape[-1] != t.shape[-3] or right.shape[-1] != t.shape[-2]:
                raise DimensionMismatch(f"operands do not fit product {expr.op!r}")
            return f.einsum("...i,...j,...ijk->...k", left, right, t)
        if isinstance(expr, Apply):
            arg = self(expr.arg)
            m = self._op(expr.op, 2)
            if arg.shape[-1] != m.shape[-1]:
                raise DimensionMismatch(f"operand does not fit map {expr.op!r}")
            return f.einsum("...ij,...j->...i", m, arg)
        raise TypeError(f"not an expression: {expr!r}")


def evaluate(identity, ops, dims, field):
    """全ての基底の組での値。形は バッチ + dims + (出力次元,)"""
    dims = tuple(dims)
    if len(dims) != identity.arity:
        raise DimensionMismatch(f"{identity.name} takes {identity.arity} variables, got {len(dims)}")
    ev = _Evaluator(field, ops, dims)
    total = None
    for coeff, expr in identity.terms:
        value = field.scale(ev(expr), coeff)
        total = value if total is None else total + value
    total = field.reduce(total)
    return np.broadcast_to(total, ev.batch + dims + total.shape[-1:])


def holds(identity, ops, dims, field):
    """バッチの各候補で恒等式が成り立つかの真偽配列"""
    if 0 in tuple(dims):
        ev = _Evaluator(field, ops, dims)
        for _, expr in identity.terms:
            ev.register(expr)
        return np.ones(ev.batch, dtype=bool)
    val = evaluate(identity, ops, dims, field)
    axes = tuple(range(val.ndim - identity.arity - 1, val.ndim))
    return ~np.any(val != 0, axis=axes)


def check(identity, ops, dims, field, clause=None):
    """単一（非バッチ）の構造について恒等式を判定する"""
    if 0 in tuple(dims):
        return CheckReport.ok(identity.name)
    val = evaluate(identity, ops, dims, field)
    if val.ndim != identity.arity + 1:
        raise DimensionMismatch("check() expects unbatched operations; use holds()")
    bad = np.argwhere(np.any(val != 0, axis=-1))
    if len(bad) == 0:
        return CheckReport.ok(identity.name)
    indices = tuple(int(i) for i in bad[0])
    witness = Witness(indices, Vector(field, np.array(val[indices], copy=True)))
    return CheckReport(False, identity.name, witness, clause)


# ----------------------------------------------------------------------
# 名前付き恒等式
# ----------------------------------------------------------------------
ASSOCIATIVE = Identity.build("associative", 3, assoc(X, Y, Z))
ANTI_FLEXIBLE = Identity.build("anti_flexible", 3, assoc(X, Y, Z), scaled(-1, assoc(Z, Y, X)))
FLEXIBLE = Identity.build("flexible", 3, assoc(X, Y, Z), assoc(Z, Y, X))
LEFT_SYMMETRIC = Identity.build("left_symmetric", 3, assoc(X, Y, Z), scaled(-1, assoc(Y, X, Z)))
RIGHT_SYMMETRIC = Identity.build("right_symmetric", 3, assoc(X, Y, Z), scaled(-1, assoc(X, Z, Y)))
ANTISYMMETRIC = Identity.build("antisymmetric", 2, (1, Prod("mul", X, Y)), (1, Prod("mul", Y, X)))
JACOBI = Identity.build(
    "jacobi", 3,
    (1, Prod("mul", Prod("mul", X, Y), Z)),
    (1, Prod("mul", Prod("mul", Y, Z), X)),
    (1, Prod("mul", Prod("mul", Z, X), Y)),
)
CYCLIC_CONDITION = Identity.build(
    "cyclic_condition", 3,
    (1, Prod("mul", Prod("mul", X, Y), Z)),
    (1, Prod("mul", Z, Prod("mul", Y, X))),
)

IDENTITIES = {
    "associative": (ASSOCIATIVE,),
    "anti_flexible": (ANTI_FLEXIBLE,),
    "flexible": (FLEXIBLE,),
    "left_symmetric": (LEFT_SYMMETRIC,),
    "right_symmetric": (RIGHT_SYMMETRIC,),
    "antisymmetric": (ANTISYMMETRIC,),
    "jacobi": (JACOBI,),
    "lie": (ANTISYMMETRIC, JACOBI),
    "cyclic_condition": (CYCLIC_CONDITION,),
}

# 別名
ALIASES = {"pre_lie": "left_symmetric", "center_symmetric": "anti_flexible"}


def identity_name(which):
    """'anti-flexible' のような CLI 表記を正規名に直す"""
    name = str(which).strip().lower().replace("-", "_")
    name = ALIASES.get(name, name)
    if name not in IDENTITIES:
        raise UnknownIdentity(f"unknown identity {which!r}")
    return name


def identity_clauses(which):
    return IDENTITIES[identity_name(which)]


def check_identity(A, which):
    name = identity_name(which)
    reports = [check(ident, {"mul": A.c}, (A.dim,) * ident.arity, A.field)
               for ident in IDENTITIES[name]]
    if len(reports) == 1:
        return reports[0]
    return first_failure(name, reports)


def algebra_holds(tensors, which, field):
    """構造定数のバッチ (B, n, n, n) について名前付き恒等式の真偽配列"""
    tensors = np.asarray(tensors)
    n = tensors.shape[-1]
    mask = None
    for ident in identity_clauses(which):
        ok = holds(ident, {"mul": tensors}, (n,) * ident.arity, field)
        mask = ok if mask is None else mask & ok
    return mask


def homomorphism_identity(name="homomorphism"):
    """φ(x·y) − φ(x)·'φ(y)"""
    return Identity.build(
        name, 2,
        (1, Apply("phi", Prod("src", X, Y))),
        (-1, Prod("dst", Apply("phi", X), Apply("phi", Y))),
    )


def check_homomorphism(src, dst, phi, identity="homomorphism"):
    """φ: src → dst が積を保つか（基底の組で判定）"""
    same_field(src, dst, phi)
    if phi.matrix.shape != (dst.dim, src.dim):
        raise DimensionMismatch(f"map {phi.matrix.shape} from dimension {src.dim} to {dst.dim}")
    return check(homomorphism_identity(identity),
                 {"src": src.c, "dst": dst.c, "phi": phi.matrix}, (src.dim, src.dim), src.field)


# ----------------------------------------------------------------------
# pre-anti-flexible 対
# ----------------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class PreAntiFlexible:
    """二つの積 ≺ (prec) と ≻ (succ) をもつ空間"""

    field: object
    prec: np.ndarray
    succ: np.ndarray

    def __post_init__(self):
        prec = Algebra(self.field, self.prec).c
        succ = Algebra(self.field, self.succ).c
        if prec.shape != succ.shape:
            raise DimensionMismatch(f"products of shapes {prec.shape} and {succ.shape}")
        object.__setattr__(self, "prec", prec)
        object.__setattr__(self, "succ", succ)

    @classmethod
    def zero(cls, field, n):
        return cls(field, field.zeros((n, n, n)), field.zeros((n, n, n)))

    @property
    def dim(self):
        return self.prec.shape[0]

    @property
    def ops(self):
        return {"prec": self.prec, "succ": self.succ}

    def prec_algebra(self):
        return Algebra(self.field, self.prec)

    def succ_algebra(self):
        return Algebra(self.field, self.succ)

    def __eq__(self, other):
        if not isinstance(other, PreAntiFlexible):
            return NotImplemented
        return (self.field == other.field and self.prec.shape == other.prec.shape
                and bool(np.all(self.prec == other.prec)) and bool(np.all(self.succ == other.succ)))

    __hash__ = None


def _p(op, a, b):
    return Prod(op, a, b)


# (x≻y)≺z − x≻(y≺z) = (z≻y)≺x − z≻(y≺x)
PRE_ANTI_FLEXIBLE_FIRST = Identity.build(
    "pre_anti_flexible_first", 3,
    (1, _p("prec", _p("succ", X, Y), Z)),
    (-1, _p("succ", X, _p("prec", Y, Z))),
    (-1, _p("prec", _p("succ", Z, Y), X)),
    (1, _p("succ", Z, _p("prec", Y, X))),
)

# (x≻y + x≺y)≻z − x≻(y≻z) = (z≺y)≺x − z≺(y≺x + y≻x)
PRE_ANTI_FLEXIBLE_SECOND = Identity.build(
    "pre_anti_flexible_second", 3,
    (1, _p("succ", _p("succ", X, Y), Z)),
    (1, _p("succ", _p("prec", X, Y), Z)),
    (-1, _p("succ", X, _p("succ", Y, Z))),
    (-1, _p("prec", _p("prec", Z, Y), X)),
    (1, _p("prec", Z, _p("prec", Y, X))),
    (1, _p("prec", Z, _p("succ", Y, X))),
)

DENDRIFORM_CLAUSES = (
    Identity.build(
        "dendriform_left", 3,
        (1, _p("prec", _p("prec", X, Y), Z)),
        (-1, _p("prec", X, _p("prec", Y, Z))),
        (-1, _p("prec", X, _p("succ", Y, Z))),
    ),
    Identity.build(
        "dendriform_middle", 3,
        (1, _p("prec", _p("succ", X, Y), Z)),
        (-1, _p("succ", X, _p("prec", Y, Z))),
    ),
    Identity.build(
        "dendriform_right", 3,
        (1, _p("succ", _p("prec", X, Y), Z)),
        (1, _p("succ", _p("succ", X, Y), Z)),
        (-1, _p("succ", X, _p("succ", Y, Z))),
    ),
)


def _pair_report(name, P, clauses):
    dims = (P.dim,) * 3
    return first_failure(name, [check(c, P.ops, dims, P.field, clause=c.name) for c in clauses])


def check_pre_anti_flexible(P):
    return _pair_report("pre_anti_flexible", P, (PRE_ANTI_FLEXIBLE_FIRST, PRE_ANTI_FLEXIBLE_SECOND))


def check_dendriform(P):
    return _pair_report("dendriform", P, DENDRIFORM_CLAUSES)


def sum_algebra(P):
    """x ∗ y = x≻y + x≺y"""
    return Algebra(P.field, P.field.reduce(P.prec + P.succ))


def left_sym_from_pre(P):
    """x◁y = x≻y − y≺x"""
    return Algebra(P.field, P.field.reduce(P.succ - P.prec.transpose(1, 0, 2)))


def right_sym_from_pre(P):
    """x▷y = x≺y − y≻x"""
    return Algebra(P.field, P.field.reduce(P.prec - P.succ.transpose(1, 0, 2)))


def check_pair_morphism(P, Q, phi):
    """φ が ≺ と ≻ の両方を保つか"""
    return first_failure("pair_morphism", [
        check_homomorphism(P.prec_algebra(), Q.prec_algebra(), phi, "prec_morphism"),
        check_homomorphism(P.succ_algebra(), Q.succ_algebra(), phi, "succ_morphism"),
    ])
