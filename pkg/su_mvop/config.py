"""執行設定模組。

從環境變數讀取數值容差與格點上限，未設定時使用預設值。
"""

import os
from dataclasses import dataclass


@dataclass(frozen=True)
class Settings:
    """全域數值設定。

    Attributes:
        max_fourier_degree: 積分格點允許的最大 Fourier 次數。
        ray_resolution: 區域判定時沿射線的取樣步數。
        eigen_tol: 特徵值碰撞與比對容差。
        svd_rtol: 奇異值相對門檻。
        grid_chunk: 每次歸約處理的格點數。
    """

    max_fourier_degree: int = 512
    ray_resolution: int = 10_000
    eigen_tol: float = 1e-8
    svd_rtol: float = 1e-10
    grid_chunk: int = 4_096


def load_settings() -> Settings:
    """讀取環境變數並建立設定。

    Returns:
        Settings 實例。

    Raises:
        ValueError: 環境變數無法轉換為數值時。
    """
    return Settings(
        max_fourier_degree=int(os.environ.get("MVOP_MAX_FOURIER_DEGREE", "512")),
        ray_resolution=int(os.environ.get("MVOP_RAY_RESOLUTION", "10000")),
        eigen_tol=float(os.environ.get("MVOP_EIGEN_TOL", "1e-8")),
        svd_rtol=float(os.environ.get("MVOP_SVD_RTOL", "1e-10")),
        grid_chunk=int(os.environ.get("MVOP_GRID_CHUNK", "4096")),
    )
