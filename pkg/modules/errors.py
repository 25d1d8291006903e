"""antiflex 共通例外

ライブラリ層は例外を送出するだけで、終了コードへの変換は cli が行う。
"""


class AntiflexError(Exception):
    """antiflex の全例外の基底クラス"""


class DivisionByZero(AntiflexError, ZeroDivisionError):
    """ゼロ除算"""


class CharacteristicObstruction(AntiflexError):
    """体の標数のために構成が定義できない（例: 標数2での 1/2）"""


class InvalidField(AntiflexError, ValueError):
    """体の指定が不正（素数でない p など）"""


class DimensionMismatch(AntiflexError, ValueError):
    """テンソル・ベクトル・行列の次元が合わない"""


class FieldMismatch(AntiflexError, ValueError):
    """異なる体の値を混ぜて演算しようとした"""


class ConstraintViolated(AntiflexError, ValueError):
    """構成の前提条件（例: L(c) = 0）が満たされない"""


class UnknownIdentity(AntiflexError, KeyError):
    """未登録の恒等式名"""

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown identity"


class PreconditionFailed(AntiflexError):
    """演算の仮定（O-作用素であること等）が成り立たない"""


class SingularForm(AntiflexError):
    """退化した双線形形式・特異行列"""


class SearchSpaceTooLarge(AntiflexError):
    """探索空間が予算を超えている"""

    def __init__(self, size, budget):
        super().__init__(f"search space {size} exceeds budget {budget}")
        self.size = size
        self.budget = budget


class InputFormatError(AntiflexError, ValueError):
    """入力ファイルの形式エラー"""
