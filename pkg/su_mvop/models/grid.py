"""環面積分格點模型。"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class GridSpec:
    """[0, 2π)ⁿ 上的均勻格點。

    每個角度取 M 個點時，各角度頻率絕對值小於 M 的三角多項式
    平均值精確。

    Attributes:
        n: 角度個數。
        points_per_angle: 每個角度的點數 M。
    """

    n: int
    points_per_angle: int

    def __post_init__(self) -> None:
        if self.n < 1 or self.points_per_angle < 1:
            raise ValueError("格點維度與點數必須為正整數")

    @property
    def total_nodes(self) -> int:
        """總格點數 Mⁿ。"""
        return self.points_per_angle ** self.n

    def nodes(self, start: int = 0, stop: int | None = None) -> np.ndarray:
        """依字典序回傳第 start 到 stop 個格點角度，形狀 (P, n)。"""
        stop = self.total_nodes if stop is None else min(stop, self.total_nodes)
        index = np.arange(start, stop)
        digits = np.empty((index.size, self.n), dtype=float)
        for j in range(self.n - 1, -1, -1):
            digits[:, j] = index % self.points_per_angle
            index = index // self.points_per_angle
        return digits * (2.0 * np.pi / self.points_per_angle)
