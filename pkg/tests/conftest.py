import pytest

from modules.algcore import Algebra, LinearMap
from modules.exactfield import FieldSpec
from modules.fixtures import build_fixture
from modules.rota import WeightedOperator


@pytest.fixture
def Q():
    return FieldSpec.rationals()


@pytest.fixture
def F2():
    return FieldSpec.prime(2, allow_small=True)


@pytest.fixture
def F3():
    return FieldSpec.prime(3, allow_small=True)


@pytest.fixture
def F5():
    return FieldSpec.prime(5)


@pytest.fixture
def E():
    return build_fixture("E")


@pytest.fixture
def E_op():
    return build_fixture("E_op")


@pytest.fixture
def D():
    return build_fixture("D")


@pytest.fixture
def Z():
    return build_fixture("Z")


@pytest.fixture
def D_rb():
    return build_fixture("D_rb")


@pytest.fixture
def W(Q):
    """e1·e2 = e1 のみ。anti-flexible でない"""
    return Algebra.from_table(Q, 2, {(0, 1): {0: 1}})


@pytest.fixture
def identity_rb(Q):
    """任意の代数上で重み −1 の Rota-Baxter 作用素"""
    return WeightedOperator(LinearMap.identity(Q, 2), -1)


@pytest.fixture
def no_config(tmp_path):
    """存在しない設定ファイル（既定値で動かす）"""
    return str(tmp_path / "missing-config.json")
