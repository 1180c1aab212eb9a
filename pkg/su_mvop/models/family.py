"""正交多項式族資料模型。"""

from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from su_mvop.models.phipoly import Monomial, PhiPoly
from su_mvop.models.weights import WeightSpec


@dataclass(frozen=True)
class QEntry:
    """單一多重次數 d 的多項式資料。

    Attributes:
        degree: 多重次數 d。
        q: N×N 多項式 Q_d。
        h: 平方範數矩陣 H_d（標記模式為對角）。
        gamma_plus: D_plus 的對角特徵值，未標記時為 None。
        gamma_minus: D_minus 的對角特徵值，未標記時為 None。
        normalization: 各行採用的正規化規則。
    """

    degree: Monomial
    q: PhiPoly
    h: np.ndarray
    gamma_plus: tuple[Fraction, ...] | None = None
    gamma_minus: tuple[Fraction, ...] | None = None
    normalization: tuple[str, ...] = ()


@dataclass(frozen=True)
class QFamily:
    """矩陣值正交多項式族。

    Attributes:
        n: 秩。
        k: 表示 kω_1 的 k。
        max_degree: 生成的最大總次數。
        labeled: 是否以算子特徵值標記各行。
        entries: 多重次數到 QEntry 的對應，依總次數與字典序排列。
        spec: 權重規格。
        basis: 係數座標的基底 (單項式, 行索引)。
        moments: 基底上的 Gram 矩陣，涵蓋總次數 ≤ max_degree 的單項式。
    """

    n: int
    k: int
    max_degree: int
    labeled: bool
    entries: Mapping[Monomial, QEntry]
    spec: WeightSpec
    basis: tuple[tuple[Monomial, int], ...] = field(repr=False)
    moments: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        """矩陣大小 N。"""
        return self.spec.size

    def __getitem__(self, degree: Monomial) -> QEntry:
        return self.entries[tuple(degree)]


@dataclass(frozen=True)
class RecurrenceCoefficients:
    """φ_j Q_d 在族中的展開係數。

    Attributes:
        degree: d。
        variable: j（從 1 起算）。
        a: 次數 |d|+1 的係數 A^d_{d',j}。
        b: 次數 |d| 的係數 B^d_{d',j}。
        c: 次數 |d|−1 的係數 C^d_{d',j}。
        residual: 展開殘差的最大係數。
    """

    degree: Monomial
    variable: int
    a: Mapping[Monomial, np.ndarray]
    b: Mapping[Monomial, np.ndarray]
    c: Mapping[Monomial, np.ndarray]
    residual: float
