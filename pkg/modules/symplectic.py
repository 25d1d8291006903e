"""巡回的な歪対称双線形形式と、そこから得る pre-Lie 積

  ω(a·b, c) + ω(b·c, a) + ω(c·a, b) = 0      （巡回条件）
  ω(a∘b, c) = ω(b, [c, a])                    （pre-Lie 積の定義）
"""

import numpy as np

from modules.algcore import (
    Algebra,
    CheckReport,
    Vector,
    Witness,
    commutator_algebra,
    determinant,
    first_failure,
    same_field,
    solve,
)
from modules.errors import DimensionMismatch, PreconditionFailed
from modules.identities import X, Y, Z, Identity, Prod, check, check_identity


def _check_form(A, w):
    same_field(A, w)
    if w.dim != A.dim:
        raise DimensionMismatch(f"form of size {w.dim} on algebra of dimension {A.dim}")


def _form_tensor(w):
    """ω を出力1次元の「積」として扱う"""
    return w.omega.reshape(w.dim, w.dim, 1)


def _cyclic_identity(name, op):
    return Identity.build(
        name, 3,
        (1, Prod("w", Prod(op, X, Y), Z)),
        (1, Prod("w", Prod(op, Y, Z), X)),
        (1, Prod("w", Prod(op, Z, X), Y)),
    )


CYCLIC_FORM = _cyclic_identity("cyclic", "mul")
SYMPLECTIC_LIE = _cyclic_identity("symplectic_lie", "br")

PRE_LIE_DEFINITION = Identity.build(
    "symplectic_residual", 3,
    (1, Prod("w", Prod("pre", X, Y), Z)),
    (-1, Prod("w", Y, Prod("br", Z, X))),
)


def _check_skew(w):
    f = w.field
    total = f.reduce(w.omega + w.omega.T)
    bad = np.argwhere(total != 0)
    if len(bad) == 0:
        return CheckReport.ok("skew")
    i, j = (int(k) for k in bad[0])
    return CheckReport(False, "skew", Witness((i, j), Vector(f, total[i, j:j + 1])), "skew")


def _check_nondegenerate(w):
    f = w.field
    det = determinant(f, w.omega) if w.dim else f.element(1)
    if det != 0:
        return CheckReport.ok("nondegenerate")
    return CheckReport(False, "nondegenerate", Witness((), Vector(f, f.array([det]))), "nondegenerate")


def check_cyclic_form(A, w):
    _check_form(A, w)
    ops = {"mul": A.c, "w": _form_tensor(w)}
    return first_failure("cyclic_form", [
        _check_skew(w),
        _check_nondegenerate(w),
        check(CYCLIC_FORM, ops, (A.dim,) * 3, A.field, clause="cyclic"),
    ])


def check_symplectic_lie(A, w):
    """交換子括弧について ω が 2-コサイクルか"""
    _check_form(A, w)
    ops = {"br": commutator_algebra(A).c, "w": _form_tensor(w)}
    return check(SYMPLECTIC_LIE, ops, (A.dim,) * 3, A.field)


def pre_lie_from_symplectic(A, w, skip_ambient_check=False):
    """ω(e_i∘e_j, e_k) = ω(e_j, [e_k, e_i]) を e_i∘e_j について解く

    係数行列は全ての (i, j) で共通の Ωᵀ なので、右辺を束ねて一度に解く。
    """
    _check_form(A, w)
    if not skip_ambient_check:
        ambient = check_identity(A, "anti_flexible")
        if not ambient.passed:
            raise PreconditionFailed("algebra is not anti-flexible")
    report = check_cyclic_form(A, w)
    if not report.passed:
        raise PreconditionFailed(f"form fails the {report.clause} condition")
    f = A.field
    n = A.dim
    if n == 0:
        return Algebra.zero(f, 0)
    K = commutator_algebra(A).c
    rhs = f.einsum("kil,jl->kij", K, w.omega).reshape(n, n * n)
    sol = solve(f, w.omega.T, rhs).reshape(n, n, n)
    return Algebra(f, sol.transpose(1, 2, 0), A.labels)


def symplectic_residual(A, w, P):
    """ω(a∘b, c) − ω(b, [c, a]) が全ての基底の組で消えるか"""
    _check_form(A, w)
    same_field(A, P)
    ops = {"pre": P.c, "br": commutator_algebra(A).c, "w": _form_tensor(w)}
    return check(PRE_LIE_DEFINITION, ops, (A.dim,) * 3, A.field)
