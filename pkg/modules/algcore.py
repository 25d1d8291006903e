"""構造定数による代数・ベクトル・線形写像・双線形形式

テンソルの規約:
  - Algebra.c[i, j, k]: e_i · e_j = Σ_k c[i, j, k] e_k
  - LinearMap.matrix[a, b]: e_b の像の第 a 成分（列 j が e_j の像）
  - BilinearForm.omega[i, j] = ω(e_i, e_j)
テンソル演算は先頭に '...' を付けた einsum で書き、探索時の候補バッチにも
同じコードを使う。
"""

from dataclasses import dataclass, field as dc_field

import numpy as np

from modules.errors import DimensionMismatch, FieldMismatch, ConstraintViolated, SingularForm
from modules.exactfield import FieldSpec


def _frozen(arr):
    arr = np.array(arr, copy=True)
    arr.setflags(write=False)
    return arr


def same_field(*items):
    fields = {item.field for item in items}
    if len(fields) > 1:
        raise FieldMismatch(" vs ".join(sorted(str(f) for f in fields)))
    return fields.pop()


# ----------------------------------------------------------------------
# 値型
# ----------------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class Vector:
    field: FieldSpec
    coords: np.ndarray

    def __post_init__(self):
        coords = self.field.array(self.coords)
        if coords.ndim != 1:
            raise DimensionMismatch(f"vector must be 1-dimensional, got shape {coords.shape}")
        object.__setattr__(self, "coords", _frozen(coords))

    @classmethod
    def zero(cls, field, n):
        return cls(field, field.zeros(n))

    @classmethod
    def basis(cls, field, n, i):
        coords = field.zeros(n)
        coords[i] = field.element(1)
        return cls(field, coords)

    @property
    def dim(self):
        return self.coords.shape[0]

    def is_zero(self):
        return not np.any(self.coords != 0)

    def _check(self, other):
        same_field(self, other)
        if self.dim != other.dim:
            raise DimensionMismatch(f"vector lengths {self.dim} and {other.dim}")

    def __add__(self, other):
        self._check(other)
        return Vector(self.field, self.field.reduce(self.coords + other.coords))

    def __sub__(self, other):
        self._check(other)
        return Vector(self.field, self.field.reduce(self.coords - other.coords))

    def __neg__(self):
        return Vector(self.field, self.field.reduce(-self.coords))

    def scale(self, coeff):
        return Vector(self.field, self.field.scale(self.coords, coeff))

    def __eq__(self, other):
        if not isinstance(other, Vector):
            return NotImplemented
        return (self.field == other.field and self.dim == other.dim
                and bool(np.all(self.coords == other.coords)))

    __hash__ = None

    def to_strings(self):
        return self.field.format_array(self.coords)

    def __repr__(self):
        return f"Vector({self.field}, {self.to_strings()})"


@dataclass(frozen=True, eq=False)
class Algebra:
    field: FieldSpec
    c: np.ndarray
    labels: tuple = ()

    def __post_init__(self):
        c = self.field.array(self.c)
        if c.ndim != 3 or not (c.shape[0] == c.shape[1] == c.shape[2]):
            raise DimensionMismatch(f"structure constants must be n×n×n, got {c.shape}")
        object.__setattr__(self, "c", _frozen(c))
        labels = tuple(self.labels) if self.labels else tuple(f"e{i + 1}" for i in range(c.shape[0]))
        if len(labels) != c.shape[0]:
            raise DimensionMismatch(f"{len(labels)} basis labels for dimension {c.shape[0]}")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def zero(cls, field, n):
        return cls(field, field.zeros((n, n, n)))

    @classmethod
    def from_table(cls, field, n, table, labels=()):
        """{(i, j): {k: coeff}} 形式の疎な乗積表から作る（0始まり添字）"""
        c = field.zeros((n, n, n))
        for (i, j), image in table.items():
            for k, coeff in image.items():
                c[i, j, k] = field.element(coeff)
        return cls(field, c, labels)

    @property
    def dim(self):
        return self.c.shape[0]

    def basis(self, i):
        return Vector.basis(self.field, self.dim, i)

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return (self.field == other.field and self.c.shape == other.c.shape
                and bool(np.all(self.c == other.c)))

    __hash__ = None

    def __repr__(self):
        return f"Algebra({self.field}, dim={self.dim})"


@dataclass(frozen=True, eq=False)
class LinearMap:
    field: FieldSpec
    matrix: np.ndarray

    def __post_init__(self):
        matrix = self.field.array(self.matrix)
        if matrix.ndim != 2:
            raise DimensionMismatch(f"linear map must be a matrix, got shape {matrix.shape}")
        object.__setattr__(self, "matrix", _frozen(matrix))

    @classmethod
    def identity(cls, field, n):
        return cls(field, field.eye(n))

    @classmethod
    def zero(cls, field, rows, cols):
        return cls(field, field.zeros((rows, cols)))

    @classmethod
    def from_images(cls, field, rows, images):
        """images[j] = e_j の像の座標列"""
        cols = len(images)
        matrix = field.zeros((rows, cols))
        for j, image in enumerate(images):
            matrix[:, j] = field.array(image)
        return cls(field, matrix)

    @classmethod
    def block(cls, field, blocks):
        """LinearMap の2次元ブロック配置から1つの行列を作る"""
        rows = [np.concatenate([b.matrix for b in row], axis=1) for row in blocks]
        return cls(field, np.concatenate(rows, axis=0))

    @property
    def rows(self):
        return self.matrix.shape[0]

    @property
    def cols(self):
        return self.matrix.shape[1]

    @property
    def is_square(self):
        return self.rows == self.cols

    def apply(self, v):
        same_field(self, v)
        if v.dim != self.cols:
            raise DimensionMismatch(f"map with {self.cols} columns applied to length {v.dim}")
        return Vector(self.field, self.field.einsum("ij,j->i", self.matrix, v.coords))

    __call__ = apply

    def __matmul__(self, other):
        same_field(self, other)
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot compose {self.matrix.shape} with {other.matrix.shape}")
        return LinearMap(self.field, self.field.einsum("ij,jk->ik", self.matrix, other.matrix))

    def power(self, k):
        if not self.is_square:
            raise DimensionMismatch("power of a non-square map")
        result = LinearMap.identity(self.field, self.rows)
        for _ in range(k):
            result = result @ self
        return result

    def _check(self, other):
        same_field(self, other)
        if self.matrix.shape != other.matrix.shape:
            raise DimensionMismatch(f"{self.matrix.shape} vs {other.matrix.shape}")

    def __add__(self, other):
        self._check(other)
        return LinearMap(self.field, self.field.reduce(self.matrix + other.matrix))

    def __sub__(self, other):
        self._check(other)
        return LinearMap(self.field, self.field.reduce(self.matrix - other.matrix))

    def __neg__(self):
        return LinearMap(self.field, self.field.reduce(-self.matrix))

    def scale(self, coeff):
        return LinearMap(self.field, self.field.scale(self.matrix, coeff))

    def transpose(self):
        return LinearMap(self.field, self.matrix.T)

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (self.field == other.field and self.matrix.shape == other.matrix.shape
                and bool(np.all(self.matrix == other.matrix)))

    __hash__ = None

    def __repr__(self):
        return f"LinearMap({self.field}, {self.field.format_array(self.matrix)})"


@dataclass(frozen=True, eq=False)
class BilinearForm:
    field: FieldSpec
    omega: np.ndarray

    def __post_init__(self):
        omega = self.field.array(self.omega)
        if omega.ndim != 2 or omega.shape[0] != omega.shape[1]:
            raise DimensionMismatch(f"bilinear form must be n×n, got {omega.shape}")
        object.__setattr__(self, "omega", _frozen(omega))

    @classmethod
    def standard_symplectic(cls, field, n=2):
        """[[0, I], [-I, 0]] 型の標準形（n は偶数）"""
        half = n // 2
        omega = field.zeros((n, n))
        for i in range(half):
            omega[i, half + i] = field.element(1)
            omega[half + i, i] = field.element(-1)
        return cls(field, omega)

    @property
    def dim(self):
        return self.omega.shape[0]

    def __call__(self, x, y):
        same_field(self, x, y)
        return self.field.einsum("i,ij,j->", x.coords, self.omega, y.coords).item()

    def __eq__(self, other):
        if not isinstance(other, BilinearForm):
            return NotImplemented
        return (self.field == other.field and self.omega.shape == other.omega.shape
                and bool(np.all(self.omega == other.omega)))

    __hash__ = None


@dataclass(frozen=True, eq=False)
class Witness:
    """反例: 基底添字の組と、そこでの差（非零ベクトル）"""

    indices: tuple
    discrepancy: Vector

    def to_json(self):
        return {"indices": list(self.indices), "discrepancy": self.discrepancy.to_strings()}


@dataclass(frozen=True, eq=False)
class CheckReport:
    passed: bool
    identity: str
    witness: Witness | None = None
    clause: str | None = None
    notes: tuple = dc_field(default_factory=tuple)

    def __post_init__(self):
        if self.passed and self.witness is not None:
            raise ValueError("a passing report carries no witness")
        object.__setattr__(self, "notes", tuple(self.notes))

    def __bool__(self):
        return self.passed

    @classmethod
    def ok(cls, identity, notes=()):
        return cls(True, identity, notes=notes)

    def renamed(self, identity, notes=()):
        return CheckReport(self.passed, identity, self.witness, self.clause,
                           tuple(self.notes) + tuple(notes))

    def to_json(self):
        out = {"identity": self.identity, "result": "pass" if self.passed else "fail"}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.clause is not None:
            out["clause"] = self.clause
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def first_failure(identity, reports):
    """最初に失敗した節のレポートを返す。全て成功なら pass"""
    notes = []
    for report in reports:
        notes.extend(report.notes)
        if not report.passed:
            return CheckReport(False, identity, report.witness,
                               report.clause or report.identity, tuple(notes))
    return CheckReport.ok(identity, tuple(notes))


# ----------------------------------------------------------------------
# テンソル組み立て
# ----------------------------------------------------------------------
def pre_compose(field, c, left=None, right=None):
    """(a, b) ↦ left(a) · right(b) の構造定数"""
    n_left = c.shape[-3] if left is None else left.shape[-1]
    n_right = c.shape[-2] if right is None else right.shape[-1]
    if left is None:
        left = field.eye(n_left)
    if right is None:
        right = field.eye(n_right)
    return field.einsum("...pi,...qj,...pqk->...ijk", left, right, c)


def post_compose(field, matrix, c):
    """(a, b) ↦ M(a · b) の構造定数"""
    return field.einsum("...kq,...ijq->...ijk", matrix, c)


def _check_vectors(A, *vectors):
    for v in vectors:
        same_field(A, v)
        if v.dim != A.dim:
            raise DimensionMismatch(f"vector of length {v.dim} in algebra of dimension {A.dim}")


# ----------------------------------------------------------------------
# 基本演算
# ----------------------------------------------------------------------
def multiply(A, x, y):
    _check_vectors(A, x, y)
    return Vector(A.field, A.field.einsum("i,j,ijk->k", x.coords, y.coords, A.c))


def associator(A, x, y, z):
    """[x, y, z] = (x·y)·z − x·(y·z)"""
    return multiply(A, multiply(A, x, y), z) - multiply(A, x, multiply(A, y, z))


def opposite(A):
    return Algebra(A.field, A.c.transpose(1, 0, 2), A.labels)


def commutator_algebra(A):
    """[x, y] = x·y − y·x を積とする代数"""
    return Algebra(A.field, A.field.reduce(A.c - A.c.transpose(1, 0, 2)), A.labels)


class ProductVariant:
    LEFT = "LeftL"
    RIGHT = "RightL"


def scalar_product_algebra(form, c, L, variant=ProductVariant.LEFT):
    """x·y = ⟨x,c⟩⟨y,c⟩c + L(x)y（LeftL）または + L(y)x（RightL）"""
    field = same_field(form, c, L)
    n = form.dim
    if c.dim != n or L.dim != n:
        raise DimensionMismatch("form, vector and functional must share a dimension")
    if field.einsum("i,i->", L.coords, c.coords).item() != 0:
        raise ConstraintViolated("L(c) must vanish")
    g = field.einsum("ij,j->i", form.omega, c.coords)
    t = field.einsum("i,j,k->ijk", g, g, c.coords)
    eye = field.eye(n)
    if variant == ProductVariant.LEFT:
        t = t + field.einsum("i,jk->ijk", L.coords, eye)
    elif variant == ProductVariant.RIGHT:
        t = t + field.einsum("j,ik->ijk", L.coords, eye)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return Algebra(field, field.reduce(t))


def left_mult(A, x):
    """y ↦ x·y の行列"""
    _check_vectors(A, x)
    return LinearMap(A.field, A.field.einsum("i,ijk->kj", x.coords, A.c))


def right_mult(A, x):
    """y ↦ y·x の行列"""
    _check_vectors(A, x)
    return LinearMap(A.field, A.field.einsum("j,ijk->ki", x.coords, A.c))


# ----------------------------------------------------------------------
# 直和
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class DirectSum:
    """ブロック直和空間。座標は先頭ブロックから順に連結する"""

    dims: tuple

    @property
    def dim(self):
        return sum(self.dims)

    def offset(self, block):
        return sum(self.dims[:block])

    def _slice(self, block):
        if not 0 <= block < len(self.dims):
            raise DimensionMismatch(f"no block {block} in a sum of {len(self.dims)}")
        start = self.offset(block)
        return slice(start, start + self.dims[block])

    def embed(self, block, v):
        if v.dim != self.dims[block]:
            raise DimensionMismatch(f"vector of length {v.dim} into block of size {self.dims[block]}")
        coords = v.field.zeros(self.dim)
        coords[self._slice(block)] = v.coords
        return Vector(v.field, coords)

    def project(self, block, v):
        if v.dim != self.dim:
            raise DimensionMismatch(f"vector of length {v.dim} in a sum of dimension {self.dim}")
        return Vector(v.field, v.coords[self._slice(block)])

    def join(self, *parts):
        """各ブロックのベクトルを連結"""
        if len(parts) != len(self.dims):
            raise DimensionMismatch(f"{len(parts)} parts for {len(self.dims)} blocks")
        field = same_field(*parts)
        for part, d in zip(parts, self.dims):
            if part.dim != d:
                raise DimensionMismatch(f"part of length {part.dim} for block of size {d}")
        return Vector(field, np.concatenate([p.coords for p in parts]))


def direct_product_algebra(A, B):
    """A ⊕ B に成分ごとの積を入れた代数"""
    field = same_field(A, B)
    n, m = A.dim, B.dim
    c = field.zeros((n + m, n + m, n + m))
    c[:n, :n, :n] = A.c
    c[n:, n:, n:] = B.c
    return Algebra(field, c, A.labels + B.labels)


# ----------------------------------------------------------------------
# 厳密線形代数
# ----------------------------------------------------------------------
def row_reduce(field, matrix):
    """被約階段形と主成分列を返す

    主成分は各列で最初に見つかった非零成分（最小の行番号）を採る。
    """
    R = field.array(np.array(matrix, copy=True)).copy()
    rows, cols = R.shape
    pivots = []
    r = 0
    for col in range(cols):
        if r == rows:
            break
        nonzero = [i for i in range(r, rows) if R[i, col] != 0]
        if not nonzero:
            continue
        i = nonzero[0]
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = field.scale(R[r], field.inverse(R[r, col]))
        for j in range(rows):
            if j != r and R[j, col] != 0:
                R[j] = field.reduce(R[j] - R[j, col] * R[r])
        pivots.append(col)
        r += 1
    return R, tuple(pivots)


def rank(field, matrix):
    return len(row_reduce(field, matrix)[1])


def determinant(field, matrix):
    """ガウス消去による厳密な行列式"""
    M = field.array(np.array(matrix, copy=True)).copy()
    n = M.shape[0]
    if M.shape != (n, n):
        raise DimensionMismatch(f"determinant of a non-square matrix {M.shape}")
    det = field.element(1)
    for col in range(n):
        nonzero = [i for i in range(col, n) if M[i, col] != 0]
        if not nonzero:
            return field.element(0)
        i = nonzero[0]
        if i != col:
            M[[col, i]] = M[[i, col]]
            det = field.element(-det)
        pivot = field.element(M[col, col])
        det = field.element(det * pivot)
        inv = field.inverse(pivot)
        for j in range(col + 1, n):
            if M[j, col] != 0:
                factor = field.element(field.element(M[j, col]) * inv)
                M[j] = field.reduce(M[j] - factor * M[col])
    return det


def solve(field, matrix, rhs):
    """正則な正方行列 M について M X = B を解く（B は列ベクトルの束）"""
    M = field.array(matrix)
    B = field.array(rhs)
    n = M.shape[0]
    if M.shape != (n, n) or B.shape[0] != n:
        raise DimensionMismatch(f"cannot solve {M.shape} against {B.shape}")
    single = B.ndim == 1
    B2 = B.reshape(n, -1)
    R, pivots = row_reduce(field, np.concatenate([M, B2], axis=1))
    if pivots[:n] != tuple(range(n)):
        raise SingularForm("matrix is singular")
    X = R[:, n:]
    return X.reshape(n) if single else X


# ----------------------------------------------------------------------
# 部分空間の閉性
# ----------------------------------------------------------------------
def check_span_closed(A, gens, identity="span_closed"):
    """span(gens) が積で閉じているか

    失敗時の witness は最初の生成元の組 (a, b) と、g_a · g_b の
    span の外にある成分（簡約後の残差）。
    """
    field = A.field
    _check_vectors(A, *gens)
    if not gens or A.dim == 0:
        return CheckReport.ok(identity)
    G = np.stack([g.coords for g in gens])
    R, pivots = row_reduce(field, G)
    basis = R[:len(pivots)]
    products = field.einsum("ai,bj,ijk->abk", G, G, A.c)
    if pivots:
        coeffs = products[..., list(pivots)]
        residual = field.reduce(products - field.einsum("abr,rk->abk", coeffs, basis))
    else:
        residual = products
    bad = np.argwhere(np.any(residual != 0, axis=-1))
    if len(bad) == 0:
        return CheckReport.ok(identity)
    a, b = (int(i) for i in bad[0])
    return CheckReport(False, identity, Witness((a, b), Vector(field, residual[a, b])))


def compare_products(identity, A, B):
    """二つの積が一致するか。不一致なら最初の基底の組 (i, j) と差を返す"""
    field = same_field(A, B)
    if A.dim != B.dim:
        raise DimensionMismatch(f"dimensions {A.dim} and {B.dim}")
    diff = field.reduce(A.c - B.c)
    bad = np.argwhere(np.any(diff != 0, axis=-1))
    if len(bad) == 0:
        return CheckReport.ok(identity)
    i, j = (int(k) for k in bad[0])
    return CheckReport(False, identity, Witness((i, j), Vector(field, diff[i, j])))
