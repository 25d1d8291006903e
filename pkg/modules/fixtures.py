"""固定の例題（fixtures/*.json）

すべて ℚ 上で定義し、build_fixture で生成、load_fixture でファイルから読む。
ファイルは write_fixtures で再生成できる。
"""

import os

from modules.algcore import (
    Algebra,
    BilinearForm,
    LinearMap,
    ProductVariant,
    Vector,
    opposite,
    scalar_product_algebra,
)
from modules.errors import InputFormatError
from modules.exactfield import FieldSpec
from modules.fileio import (
    algebra_from_json,
    bimodule_from_json,
    form_from_json,
    load_json,
    map_from_json,
    map_weight,
    object_to_json,
    pair_from_json,
    write_json,
)
from modules.omod import adjoint_bimodule, dual_bimodule
from modules.rota import WeightedOperator, rb_pre_anti_flexible
from modules.utils.logwriter import log_info
from modules.utils.path_utils import get_fixtures_dir, is_subpath


def algebra_E(field=None):
    """x·y = ⟨x,c⟩⟨y,c⟩c + L(x)y,  ⟨e_i,e_j⟩ = δ_ij, c = e1, L = (0, 1)"""
    field = field or FieldSpec.rationals()
    form = BilinearForm(field, field.eye(2))
    c = Vector.basis(field, 2, 0)
    L = Vector(field, field.array([0, 1]))
    return scalar_product_algebra(form, c, L, ProductVariant.LEFT)


def algebra_D(field=None):
    """二重数 ℚ[ε]/(ε²): e1 = 1, e2 = ε"""
    field = field or FieldSpec.rationals()
    return Algebra.from_table(field, 2, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}})


def algebra_Z(field=None):
    """e1·e1 = e2、その他は 0"""
    field = field or FieldSpec.rationals()
    return Algebra.from_table(field, 2, {(0, 0): {1: 1}})


def rb_operator_D(field=None):
    """D 上の重み0 Rota-Baxter 作用素 e1 ↦ e2, e2 ↦ 0"""
    field = field or FieldSpec.rationals()
    return WeightedOperator(LinearMap(field, field.array([[0, 0], [1, 0]])), 0)


def omega_std(field=None):
    field = field or FieldSpec.rationals()
    return BilinearForm.standard_symplectic(field, 2)


def _builders():
    return {
        "E": algebra_E,
        "E_op": lambda: opposite(algebra_E()),
        "D": algebra_D,
        "D_rb": rb_operator_D,
        "Z": algebra_Z,
        "omega_std": omega_std,
        "D_adjoint": lambda: adjoint_bimodule(algebra_D()),
        "E_dual": lambda: dual_bimodule(algebra_E()),
        "P_D": lambda: rb_pre_anti_flexible(algebra_D(), rb_operator_D()),
    }


FIXTURE_NAMES = tuple(_builders())


def build_fixture(name):
    builders = _builders()
    if name not in builders:
        raise InputFormatError(f"unknown fixture {name!r}")
    return builders[name]()


def fixture_path(name, fixtures_dir=None):
    fixtures_dir = fixtures_dir or get_fixtures_dir()
    path = os.path.join(fixtures_dir, f"{name}.json")
    if not is_subpath(path, fixtures_dir):
        raise InputFormatError(f"fixture name escapes the fixture directory: {name!r}")
    return path


def load_fixture(name, fixtures_dir=None):
    data = load_json(fixture_path(name, fixtures_dir))
    if "product" in data:
        return algebra_from_json(data)
    if "moddim" in data:
        return bimodule_from_json(data)
    if "prec" in data:
        return pair_from_json(data)
    if "rows" in data:
        M = map_from_json(data)
        weight = map_weight(data, M.field)
        return M if weight is None else WeightedOperator(M, weight)
    if "entries" in data:
        return form_from_json(data)
    raise InputFormatError(f"unrecognized fixture {name!r}")


def write_fixtures(fixtures_dir=None):
    fixtures_dir = fixtures_dir or get_fixtures_dir()
    os.makedirs(fixtures_dir, exist_ok=True)
    for name in FIXTURE_NAMES:
        write_json(fixture_path(name, fixtures_dir), object_to_json(build_fixture(name)))
    log_info(f"例題ファイルを書き出しました: {fixtures_dir}")
