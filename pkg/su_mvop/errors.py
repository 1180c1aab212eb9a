"""例外類別。"""


class MvopError(Exception):
    """所有計算錯誤的基底類別。"""


class SymmetryError(MvopError):
    """輸入不具 Weyl 群對稱性。"""


class ParityError(MvopError):
    """Laurent 多項式含有奇次特徵標，無法以 u = t² 表示。"""


class FitError(MvopError):
    """一次式擬設的線性系統無解或解不唯一。"""


class QuadratureError(MvopError):
    """積分所需的 Fourier 次數超過設定上限。"""


class LabelAmbiguityError(MvopError):
    """預測特徵值碰撞，無法唯一標記多重次數。

    Attributes:
        labels: 發生碰撞的 (d, 列索引) 標籤。
    """

    def __init__(self, message: str, labels: list) -> None:
        super().__init__(message)
        self.labels = labels


class RecurrenceError(MvopError):
    """遞迴展開的殘差超過容差。"""


class ConsistencyError(MvopError):
    """內部恆等式不成立。"""
