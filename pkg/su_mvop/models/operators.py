"""矩陣微分算子模型。"""

from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction

from su_mvop.models.phipoly import PhiPoly

MultiIndex = tuple[int, ...]


@dataclass(frozen=True)
class DiffOperator:
    """φ 座標中的矩陣微分算子 Σ_α P_α(φ) ∂^α。

    Attributes:
        n: 變數個數。
        size: 係數矩陣大小 N。
        coefficients: 多重指標 α（|α| ≤ 2）到係數多項式的對應。
        eigenvalue_table: 多重次數 d 到對角特徵值的對應。
        label: 算子名稱（plus 或 minus）。
    """

    n: int
    size: int
    coefficients: Mapping[MultiIndex, PhiPoly]
    eigenvalue_table: Mapping[MultiIndex, tuple[Fraction, ...]] = field(
        default_factory=dict
    )
    label: str = ""

    def __post_init__(self) -> None:
        for alpha, coef in self.coefficients.items():
            if len(alpha) != self.n or sum(alpha) > 2:
                raise ValueError(f"多重指標 {alpha} 不合法")
            if coef.shape != (self.size, self.size):
                raise ValueError(f"係數形狀 {coef.shape} 與大小 {self.size} 不符")
            # ∂^α 的係數總次數不得超過 |α|
            if coef.total_degree() > sum(alpha):
                raise ValueError(
                    f"∂^{alpha} 的係數次數 {coef.total_degree()} 超過 {sum(alpha)}"
                )

    @property
    def order(self) -> int:
        """算子階數。"""
        return max(
            (sum(a) for a, c in self.coefficients.items() if not c.is_zero()),
            default=0,
        )
