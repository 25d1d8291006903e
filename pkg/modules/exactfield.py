"""厳密スカラー演算（有理数体 Q と素体 F_p）

恒等式の判定はすべてこのモジュールの体の上で行い、浮動小数点は使わない。
Q の配列は Fraction を要素とする dtype=object、F_p の配列は int64 で
常に 0..p-1 に正規化して保持する。ただし p が大きく int64 で積が
あふれる体（wide）は Python の int を要素とする dtype=object で保持する。
int64 の体でも縮約の途中の和が int64 を超える einsum は object で計算する。
"""

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np
import sympy

from modules.errors import (
    CharacteristicObstruction,
    DivisionByZero,
    FieldMismatch,
    InputFormatError,
    InvalidField,
)

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")

# p = 2, 3 は allow_small を明示したときだけ許可する
SMALL_CHARACTERISTICS = (2, 3)

INT64_MAX = np.iinfo(np.int64).max


class FieldKind(str, Enum):
    RATIONALS = "Q"
    PRIME = "Fp"


@dataclass(frozen=True)
class FieldSpec:
    """基礎体の指定"""

    kind: FieldKind
    p: int | None = None

    def __post_init__(self):
        kind = FieldKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is FieldKind.RATIONALS:
            if self.p is not None:
                raise InvalidField("rational field takes no modulus")
            return
        if self.p is None or isinstance(self.p, bool):
            raise InvalidField("prime field requires p")
        p = int(self.p)
        if p < 2 or not sympy.isprime(p):
            raise InvalidField(f"p={self.p} is not a prime")
        object.__setattr__(self, "p", p)

    @classmethod
    def rationals(cls):
        return cls(FieldKind.RATIONALS)

    @classmethod
    def prime(cls, p, allow_small=False):
        """F_p を作る。p ∈ {2, 3} は allow_small=True のときのみ"""
        field = cls(FieldKind.PRIME, p)
        if field.p in SMALL_CHARACTERISTICS and not allow_small:
            raise CharacteristicObstruction(
                f"characteristic {field.p} requires allow_small_characteristic")
        return field

    # ------------------------------------------------------------------
    # 性質
    # ------------------------------------------------------------------
    @property
    def is_prime(self):
        return self.kind is FieldKind.PRIME

    @property
    def characteristic(self):
        return self.p if self.is_prime else 0

    @property
    def wide(self):
        """要素どうしの積の和が int64 に収まらない素体"""
        return self.is_prime and 2 * (self.p - 1) ** 2 > INT64_MAX

    @property
    def dtype(self):
        return np.int64 if self.is_prime and not self.wide else object

    def __str__(self):
        return f"F_{self.p}" if self.is_prime else "Q"

    # ------------------------------------------------------------------
    # 要素
    # ------------------------------------------------------------------
    def coefficient(self, value):
        """有理数の係数をこの体の要素に写す

        F_p で分母が p で割り切れるとき（標数2での 1/2 など）は
        CharacteristicObstruction を送出する。
        """
        value = Fraction(value)
        if not self.is_prime:
            return value
        if value.denominator % self.p == 0:
            raise CharacteristicObstruction(
                f"{value} is undefined in characteristic {self.p}")
        return value.numerator * pow(value.denominator, -1, self.p) % self.p

    def element(self, value):
        """任意の数値表現を正規形に変換"""
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatch(f"scalar over {value.field} used in {self}")
            return value.value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, (bool, np.bool_)):
            value = int(value)
        if isinstance(value, (int, np.integer)):
            return int(value) % self.p if self.is_prime else Fraction(int(value))
        if isinstance(value, Fraction):
            return self.coefficient(value)
        raise InputFormatError(f"not an exact scalar: {value!r}")

    def parse(self, text):
        """'a' または 'a/b' 形式の文字列を読む"""
        match = _RATIONAL_RE.match(str(text))
        if not match:
            raise InputFormatError(f"malformed scalar: {text!r}")
        num = int(match.group(1))
        den = int(match.group(2)) if match.group(2) is not None else 1
        if den == 0:
            raise DivisionByZero(f"zero denominator in {text!r}")
        return self.coefficient(Fraction(num, den))

    def format(self, value):
        """正規形の文字列表現"""
        value = self.element(value)
        if self.is_prime:
            return str(value)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"

    def inverse(self, value):
        value = self.element(value)
        if value == 0:
            raise DivisionByZero("inverse of zero")
        if self.is_prime:
            return pow(value, -1, self.p)
        return 1 / value

    def elements(self):
        """F_p の全要素を辞書式順に返す"""
        if not self.is_prime:
            raise InvalidField("the rational field is not enumerable")
        return list(range(self.p))

    # ------------------------------------------------------------------
    # 配列
    # ------------------------------------------------------------------
    def array(self, data):
        """入れ子リスト・配列を正規化された numpy 配列にする"""
        arr = data if isinstance(data, np.ndarray) else np.array(data, dtype=object)
        if self.is_prime and arr.dtype.kind in "iub":
            return self.reduce(arr)
        converted = np.vectorize(self.element, otypes=[object])(arr) if arr.size else arr.astype(object)
        return np.asarray(converted, dtype=self.dtype).reshape(arr.shape)

    def zeros(self, shape):
        if self.is_prime:
            return np.zeros(shape, dtype=self.dtype)
        return np.full(shape, Fraction(0), dtype=object)

    def eye(self, n):
        if self.is_prime:
            return np.eye(n, dtype=np.int64).astype(self.dtype)
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = Fraction(1)
        return out

    def reduce(self, arr):
        """演算結果を正規形に戻す"""
        if not self.is_prime:
            return np.asarray(arr, dtype=object)
        arr = np.asarray(arr)
        if self.wide or arr.dtype == object or arr.dtype.kind == "u":
            # object は Python の int のまま mod を取る
            return np.asarray(np.mod(arr.astype(object), self.p), dtype=object).astype(self.dtype)
        return np.mod(arr.astype(np.int64), self.p).astype(self.dtype)

    def scale(self, arr, coeff):
        arr = np.asarray(arr)
        if self.is_prime:
            arr = arr.astype(self.dtype)
        return self.reduce(arr * self.element(coeff))

    def _exact_in_int64(self, subscripts, operands):
        """縮約の最大値 (p-1)^演算数 × 和の項数 が int64 に収まるか"""
        inputs, output = subscripts.replace(" ", "").split("->")
        sizes = {}
        for spec, op in zip(inputs.split(","), operands):
            letters = spec.replace("...", "")
            shape = np.shape(op)
            sizes.update(zip(letters, shape[len(shape) - len(letters):]))
        terms = 1
        for letter, size in sizes.items():
            if letter not in output:
                terms *= size
        return (self.p - 1) ** len(operands) * terms <= INT64_MAX

    def einsum(self, subscripts, *operands):
        """einsum の後に正規化する

        F_p で int64 があふれうる縮約は Python の int で計算する。
        """
        if self.is_prime and (self.wide or not self._exact_in_int64(subscripts, operands)):
            operands = [np.asarray(op).astype(object) for op in operands]
        return self.reduce(np.einsum(subscripts, *operands))

    def format_array(self, arr):
        """配列を入れ子の文字列リストへ"""
        arr = np.asarray(arr)
        if arr.ndim == 0:
            return self.format(arr.item())
        return [self.format_array(sub) for sub in arr]

    # ------------------------------------------------------------------
    # JSON
    # ------------------------------------------------------------------
    def to_json(self):
        if self.is_prime:
            return {"kind": FieldKind.PRIME.value, "p": self.p}
        return {"kind": FieldKind.RATIONALS.value}

    @classmethod
    def from_json(cls, data, allow_small=False):
        if not isinstance(data, dict) or "kind" not in data:
            raise InputFormatError(f"malformed field: {data!r}")
        try:
            kind = FieldKind(data["kind"])
        except ValueError as e:
            raise InputFormatError(f"unknown field kind: {data['kind']!r}") from e
        if kind is FieldKind.RATIONALS:
            return cls.rationals()
        if "p" not in data:
            raise InputFormatError("prime field without p")
        return cls.prime(data["p"], allow_small=allow_small)


@dataclass(frozen=True)
class Scalar:
    """体の要素（不変値）"""

    field: FieldSpec
    value: object

    def __post_init__(self):
        object.__setattr__(self, "value", self.field.element(self.value))

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        return self.field.element(other)

    def _wrap(self, value):
        if self.field.is_prime:
            value %= self.field.p
        return Scalar(self.field, value)

    def __add__(self, other):
        return self._wrap(self.value + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.value - self._coerce(other))

    def __rsub__(self, other):
        return self._wrap(self._coerce(other) - self.value)

    def __mul__(self, other):
        return self._wrap(self.value * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(-self.value)

    def __truediv__(self, other):
        return scalar_div(self, other, self.field)

    def __rtruediv__(self, other):
        return scalar_div(other, self, self.field)

    def is_zero(self):
        return self.value == 0

    def __str__(self):
        return self.field.format(self.value)


def scalar_div(a, b, field=None):
    """a / b を厳密に計算する

    b が整数・有理数リテラルで、値は 0 でないのに体の中で 0 になる場合は
    CharacteristicObstruction（F_2 での 1/2 など）。
    """
    if field is None:
        for candidate in (a, b):
            if isinstance(candidate, Scalar):
                field = candidate.field
                break
        else:
            field = FieldSpec.rationals()
    if not isinstance(b, (Scalar, str)):
        literal = Fraction(b)
        if literal == 0:
            raise DivisionByZero("division by zero")
        if field.is_prime and literal.numerator % field.p == 0:
            raise CharacteristicObstruction(
                f"{literal} vanishes in characteristic {field.p}")
    divisor = field.element(b)
    if divisor == 0:
        raise DivisionByZero("division by zero")
    return Scalar(field, field.element(a) * field.inverse(divisor))
