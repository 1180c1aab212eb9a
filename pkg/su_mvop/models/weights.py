"""權重相關資料模型。

定義 SL(n+1)×SL(n+1) 的權重對、底層集合元素、組合矩陣、
矩陣權重規格與測度常數。權重一律以分割座標表示，長度 n+1 且
最後一個分量為 0。
"""

from dataclasses import dataclass
from fractions import Fraction

from su_mvop.models.phipoly import PhiPoly

Partition = tuple[int, ...]


def normalize_partition(entries: tuple[int, ...]) -> Partition:
    """減去最後一個分量，得到最後一項為 0 的分割座標。"""
    last = entries[-1]
    return tuple(int(x) - last for x in entries)


def is_dominant(entries: tuple[int, ...]) -> bool:
    """分割座標是否非遞增。"""
    return all(a >= b for a, b in zip(entries, entries[1:]))


@dataclass(frozen=True)
class WeightPair:
    """群 SL(n+1)×SL(n+1) 的支配權重 (左, 右)。

    Attributes:
        left: 左因子的分割座標。
        right: 右因子的分割座標。
    """

    left: Partition
    right: Partition

    def __post_init__(self) -> None:
        if len(self.left) != len(self.right):
            raise ValueError("左右權重長度不一致")
        left = normalize_partition(self.left)
        right = normalize_partition(self.right)
        if not (is_dominant(left) and is_dominant(right)):
            raise ValueError(f"權重 {self.left}, {self.right} 不是支配權重")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    @property
    def rank(self) -> int:
        """n。"""
        return len(self.left) - 1

    def __add__(self, other: "WeightPair") -> "WeightPair":
        return WeightPair(
            tuple(a + b for a, b in zip(self.left, other.left)),
            tuple(a + b for a, b in zip(self.right, other.right)),
        )

    def scaled(self, factor: int) -> "WeightPair":
        """乘上非負整數。"""
        return WeightPair(
            tuple(factor * a for a in self.left),
            tuple(factor * a for a in self.right),
        )


@dataclass(frozen=True)
class BottomElement:
    """k = 1 時的底層元素 ν_i = (ω_i, ω_{n+2−i})。

    Attributes:
        index: i，範圍 1..n+1。
        weight: 對應的權重對。
    """

    index: int
    weight: WeightPair


@dataclass(frozen=True)
class CompositionMatrix:
    """非負整數矩陣 s^p_q，行和為 τ、列和為 ρ。

    Attributes:
        entries: entries[q][p] = s^p_q。
    """

    entries: tuple[tuple[int, ...], ...]

    @property
    def row_sums(self) -> tuple[int, ...]:
        """各列和 ρ_q。"""
        return tuple(sum(row) for row in self.entries)

    @property
    def column_sums(self) -> tuple[int, ...]:
        """各行和 τ_p。"""
        return tuple(sum(col) for col in zip(*self.entries))

    def column(self, p: int) -> tuple[int, ...]:
        """第 p 行 (s^p_1, …, s^p_{n+1})。"""
        return tuple(row[p] for row in self.entries)


@dataclass(frozen=True)
class WeightSpec:
    """矩陣權重規格。

    Attributes:
        n: 秩。
        k: 表示 kω_1 的 k。
        w_pol: N×N 權重多項式部分。
        p: 1×1 純量密度多項式，在環面上等於 δ。
        prefactor: 乘在 (2π)^{−n} 前的有理常數 ∏_j binom(n+1, j)，
            完整常數為 (2π)^{−n}·prefactor = π^{−n}·prefactor/2ⁿ。
        provenance: 權重來源（closed-form、torus-product 或 congruence-class）。
    """

    n: int
    k: int
    w_pol: PhiPoly
    p: PhiPoly
    prefactor: Fraction
    provenance: str

    @property
    def size(self) -> int:
        """矩陣大小 N。"""
        return self.w_pol.shape[0]


@dataclass(frozen=True)
class MeasureConstants:
    """測度常數。

    Attributes:
        n: 秩。
        c1: 正規化常數 1/(n+1)!。
        selberg: s = 1 的 Selberg 積分值 (n+1)!。
        volume: 正交區域 φ(A_c) 的體積。
    """

    n: int
    c1: Fraction
    selberg: Fraction
    volume: float


@dataclass(frozen=True)
class BoundaryPoint:
    """區域邊界的取樣點。

    Attributes:
        alcove: 凹室參數 (b_1, …, b_n)。
        coordinates: 實座標。
    """

    alcove: tuple[float, ...]
    coordinates: tuple[float, ...]
