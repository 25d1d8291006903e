"""JSON ファイル形式

スカラーは常に文字列（ℚ は "a" / "a/b"、F_p は 0..p−1 の十進表記）。
正準形はキーを整列し indent=2、末尾に改行を付ける。探索結果の JSON-lines は
1行1レコードの詰めた形式。
"""

import json

import numpy as np

from modules.algcore import Algebra, BilinearForm, LinearMap
from modules.errors import InputFormatError
from modules.exactfield import FieldSpec
from modules.identities import PreAntiFlexible
from modules.omod import Bimodule


def dumps_canonical(obj):
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def dumps_line(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def load_json(path):
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except FileNotFoundError as e:
        raise InputFormatError(f"file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise InputFormatError(f"{path}: invalid JSON ({e})") from e


def write_json(path, obj):
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(dumps_canonical(obj))


def _require(data, *keys):
    if not isinstance(data, dict):
        raise InputFormatError(f"expected an object, got {type(data).__name__}")
    missing = [k for k in keys if k not in data]
    if missing:
        raise InputFormatError(f"missing keys: {', '.join(missing)}")


def _parse_array(field, data, shape, what):
    try:
        raw = np.array(data, dtype=object)
    except ValueError as e:
        raise InputFormatError(f"{what}: ragged array") from e
    if raw.size == 0 and int(np.prod(shape)) == 0:
        return field.zeros(shape)
    if raw.shape != tuple(shape):
        raise InputFormatError(f"{what}: expected shape {tuple(shape)}, got {raw.shape}")
    out = field.zeros(shape)
    for idx, value in np.ndenumerate(raw):
        if isinstance(value, str):
            out[idx] = field.parse(value)
        elif isinstance(value, int) and not isinstance(value, bool):
            out[idx] = field.element(value)
        else:
            raise InputFormatError(f"{what}: scalar {value!r} must be a string")
    return out


def _field(data, allow_small):
    return FieldSpec.from_json(data.get("field"), allow_small=allow_small)


# ----------------------------------------------------------------------
# 代数
# ----------------------------------------------------------------------
def algebra_to_json(A):
    return {
        "field": A.field.to_json(),
        "dim": A.dim,
        "basis": list(A.labels),
        "product": A.field.format_array(A.c),
    }


def algebra_from_json(data, allow_small=False):
    _require(data, "field", "dim", "product")
    field = _field(data, allow_small)
    n = data["dim"]
    if not isinstance(n, int) or n < 0:
        raise InputFormatError(f"invalid dimension {n!r}")
    c = _parse_array(field, data["product"], (n, n, n), "product")
    labels = tuple(data.get("basis") or ())
    if labels and len(labels) != n:
        raise InputFormatError(f"{len(labels)} basis names for dimension {n}")
    return Algebra(field, c, labels)


# ----------------------------------------------------------------------
# 線形写像・双線形形式
# ----------------------------------------------------------------------
def map_to_json(M, weight=None):
    out = {
        "field": M.field.to_json(),
        "rows": M.rows,
        "cols": M.cols,
        "entries": M.field.format_array(M.matrix),
    }
    if weight is not None:
        out["weight"] = M.field.format(weight)
    return out


def map_from_json(data, allow_small=False):
    _require(data, "field", "rows", "cols", "entries")
    field = _field(data, allow_small)
    matrix = _parse_array(field, data["entries"], (data["rows"], data["cols"]), "entries")
    return LinearMap(field, matrix)


def map_weight(data, field):
    """写像ファイルに重みが書かれていればその値、無ければ None"""
    if isinstance(data, dict) and "weight" in data:
        return field.parse(str(data["weight"]))
    return None


def form_to_json(w):
    return {"field": w.field.to_json(), "dim": w.dim, "entries": w.field.format_array(w.omega)}


def form_from_json(data, allow_small=False):
    _require(data, "field", "dim", "entries")
    field = _field(data, allow_small)
    n = data["dim"]
    return BilinearForm(field, _parse_array(field, data["entries"], (n, n), "entries"))


# ----------------------------------------------------------------------
# 双加群・二つの積
# ----------------------------------------------------------------------
def bimodule_to_json(B):
    return {
        "algebra": algebra_to_json(B.algebra),
        "moddim": B.moddim,
        "left": B.field.format_array(B.left),
        "right": B.field.format_array(B.right),
    }


def bimodule_from_json(data, allow_small=False):
    _require(data, "algebra", "moddim", "left", "right")
    A = algebra_from_json(data["algebra"], allow_small)
    n, m = A.dim, data["moddim"]
    left = _parse_array(A.field, data["left"], (n, m, m), "left")
    right = _parse_array(A.field, data["right"], (m, n, m), "right")
    return Bimodule(A, left, right)


def pair_to_json(P):
    return {
        "field": P.field.to_json(),
        "dim": P.dim,
        "prec": P.field.format_array(P.prec),
        "succ": P.field.format_array(P.succ),
    }


def pair_from_json(data, allow_small=False):
    _require(data, "field", "dim", "prec", "succ")
    field = _field(data, allow_small)
    n = data["dim"]
    shape = (n, n, n)
    return PreAntiFlexible(field, _parse_array(field, data["prec"], shape, "prec"),
                           _parse_array(field, data["succ"], shape, "succ"))


def object_to_json(obj):
    if isinstance(obj, Algebra):
        return algebra_to_json(obj)
    if isinstance(obj, LinearMap):
        return map_to_json(obj)
    if isinstance(obj, BilinearForm):
        return form_to_json(obj)
    if isinstance(obj, Bimodule):
        return bimodule_to_json(obj)
    if isinstance(obj, PreAntiFlexible):
        return pair_to_json(obj)
    if hasattr(obj, "map") and hasattr(obj, "weight"):
        return map_to_json(obj.map, obj.weight)
    if hasattr(obj, "map"):
        return map_to_json(obj.map)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def load_algebra(path, allow_small=False):
    return algebra_from_json(load_json(path), allow_small)


def load_form(path, allow_small=False):
    return form_from_json(load_json(path), allow_small)


def load_bimodule(path, allow_small=False):
    return bimodule_from_json(load_json(path), allow_small)


def load_pair(path, allow_small=False):
    return pair_from_json(load_json(path), allow_small)
