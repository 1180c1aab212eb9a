"""報告與執行設定資料模型。"""

from dataclasses import dataclass
from enum import Enum


class Verdict(str, Enum):
    """權重可約性判定。"""

    IRREDUCIBLE = "irreducible"
    REDUCIBLE = "reducible"


class OutputFormat(str, Enum):
    """輸出格式。"""

    JSON = "json"
    CSV = "csv"


@dataclass(frozen=True)
class CommutantReport:
    """交換子代數分析結果。

    Attributes:
        n: 秩。
        k: 表示 kω_1 的 k。
        dim_aw: 交換子代數 A_W 的複維度。
        dim_script_aw: 實向量空間 𝒜_W 的實維度。
        star_invariant: 𝒜_W 是否在共軛轉置下封閉。
        hermitian_match: 𝒜_W 的維度是否等於 A_W 自伴部分的維度。
        samples: 最終使用的取樣點數。
    """

    n: int
    k: int
    dim_aw: int
    dim_script_aw: int
    star_invariant: bool
    hermitian_match: bool
    samples: int

    @property
    def verdict(self) -> Verdict:
        """A_W 平凡且 𝒜_W 共軛封閉時為不可約。"""
        if self.dim_aw == 1 and self.star_invariant:
            return Verdict.IRREDUCIBLE
        return Verdict.REDUCIBLE


@dataclass(frozen=True)
class CheckResult:
    """驗證項目結果。

    Attributes:
        name: 檢查名稱。
        anchor: 對應的數學結果。
        passed: 是否通過。
        detail: 數值摘要。
    """

    name: str
    anchor: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class RunConfig:
    """命令列執行設定。

    Attributes:
        command: 子命令名稱。
        n: 秩。
        k: 表示 kω_1 的 k。
        max_degree: 族的最大總次數。
        grid_cap: 積分允許的最大 Fourier 次數。
        resolution: 區域判定的射線步數。
        seed: 隨機種子。
        out: 輸出檔路徑，None 表示標準輸出。
        fmt: 輸出格式。
    """

    command: str
    n: int
    k: int = 1
    max_degree: int = 2
    grid_cap: int = 512
    resolution: int = 10_000
    seed: int = 0
    out: str | None = None
    fmt: OutputFormat = OutputFormat.JSON

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ValueError("k 必須為非負整數")
        if not 1 <= self.n <= 6:
            raise ValueError("n 必須介於 1 與 6 之間")
        if self.command in ("generate", "verify") and self.n > 3:
            raise ValueError("generate 與 verify 僅支援 n ≤ 3")
        if self.max_degree < 0 or self.grid_cap < 1 or self.resolution < 1:
            raise ValueError("次數、格點上限與解析度必須為正")
