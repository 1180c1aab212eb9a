"""程式進入點。

初始化 logger，解析子命令並輸出權重、Ψ₀、區域、常數、算子、
正交多項式族、交換子報告或驗證結果。
"""

import argparse
import logging
import sys

import numpy as np

from su_mvop import __version__
from su_mvop.errors import MvopError
from su_mvop.logger import setup_logger
from su_mvop.models.reports import OutputFormat, RunConfig
from su_mvop.services import export_service
from su_mvop.services.commutant_service import analyze
from su_mvop.services.family_service import generate
from su_mvop.services.operator_service import build_operators
from su_mvop.services.spherical_service import psi0_for
from su_mvop.services.verify_service import run_verification
from su_mvop.services.weight_service import (
    build_weight_spec,
    domain_boundary,
    domain_contains,
    measure_constants,
    selberg_integral,
)

logger = logging.getLogger(__name__)

COMMANDS = (
    "weight", "psi0", "domain", "constants", "operators", "generate", "commutant", "verify",
)

# 邊界取樣時每個凹室面的細分數
_BOUNDARY_STEPS = 48


def parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    """解析命令列參數。

    Args:
        argv: 參數列表，預設讀取 sys.argv。

    Returns:
        解析後的參數命名空間。
    """
    parser = argparse.ArgumentParser(
        prog="mvop", description="SU(n+1)×SU(n+1) 矩陣值正交多項式工具",
    )
    parser.add_argument("command", choices=COMMANDS, help="子命令")
    parser.add_argument("--n", type=int, required=True, help="秩 n")
    parser.add_argument("--k", type=int, default=1, help="表示 kω_1 的 k（預設 1）")
    parser.add_argument(
        "--max-degree", type=int, default=2, help="族與特徵值表的最大總次數（預設 2）",
    )
    parser.add_argument(
        "--grid-cap", type=int, default=512, help="積分允許的最大 Fourier 次數（預設 512）",
    )
    parser.add_argument(
        "--resolution", type=int, default=10_000, help="區域判定的射線步數（預設 10000）",
    )
    parser.add_argument("--seed", type=int, default=0, help="隨機種子（預設 0）")
    parser.add_argument("--out", default=None, help="輸出檔路徑，預設為標準輸出")
    parser.add_argument(
        "--format", dest="fmt", choices=[f.value for f in OutputFormat],
        default=OutputFormat.JSON.value, help="輸出格式（預設 json）",
    )
    return parser.parse_args(argv)


def build_config(args: argparse.Namespace) -> RunConfig:
    """由命令列參數建立 RunConfig。

    Raises:
        ValueError: 參數超出允許範圍。
    """
    return RunConfig(
        command=args.command,
        n=args.n,
        k=args.k,
        max_degree=args.max_degree,
        grid_cap=args.grid_cap,
        resolution=args.resolution,
        seed=args.seed,
        out=args.out,
        fmt=OutputFormat(args.fmt),
    )


def _emit(config: RunConfig, payload, table: tuple[list, list]) -> None:
    if config.fmt is OutputFormat.CSV:
        export_service.write_csv(*table, out=config.out)
    else:
        export_service.write_json(payload, out=config.out)


def _weight(config: RunConfig) -> int:
    spec = build_weight_spec(config.n, config.k)
    payload = export_service.weight_spec_to_json(spec)
    payload["bottom_set"] = export_service.bottom_set_to_json(config.n, config.k)
    _emit(config, payload, export_service.bottom_set_rows(config.n, config.k))
    return 0


def _psi0(config: RunConfig) -> int:
    payload = {
        "n": config.n,
        "k": config.k,
        "psi0": export_service.matrix_laurent_to_json(psi0_for(config.n, config.k)),
        "bottom_set": export_service.bottom_set_to_json(config.n, config.k),
    }
    _emit(config, payload, export_service.bottom_set_rows(config.n, config.k))
    return 0


def _domain(config: RunConfig) -> int:
    points = domain_boundary(config.n, _BOUNDARY_STEPS)
    header, rows = export_service.boundary_rows(points)
    payload = {
        "n": config.n,
        "origin_inside": domain_contains(np.zeros(config.n), config.n, config.resolution),
        "volume": measure_constants(config.n).volume,
        "boundary": [dict(zip(header, row)) for row in rows],
    }
    _emit(config, payload, (header, rows))
    return 0


def _constants(config: RunConfig) -> int:
    payload = export_service.constants_to_json(measure_constants(config.n))
    payload["selberg_gamma"] = {
        str(s): selberg_integral(config.n, s) for s in (0.5, 1.0, 1.5)
    }
    _emit(config, payload, (list(payload), [[str(v) for v in payload.values()]]))
    return 0


def _operators(config: RunConfig) -> int:
    d_plus, d_minus = build_operators(config.n, config.k, config.max_degree)
    payload = {
        "n": config.n,
        "k": config.k,
        "plus": export_service.operator_to_json(d_plus),
        "minus": export_service.operator_to_json(d_minus),
    }
    _emit(config, payload, export_service.operator_rows(d_plus, d_minus))
    return 0


def _generate(config: RunConfig) -> int:
    family = generate(config.n, config.k, config.max_degree, config.grid_cap)
    _emit(config, export_service.family_to_json(family), export_service.eigenvalue_rows(family))
    return 0


def _commutant(config: RunConfig) -> int:
    report = analyze(build_weight_spec(config.n, config.k), seed=config.seed)
    payload = export_service.commutant_to_json(report)
    _emit(config, payload, (list(payload), [list(payload.values())]))
    return 0


def _verify(config: RunConfig) -> int:
    results = run_verification(config)
    print(export_service.render_table(results))
    if config.out is not None:
        _emit(config, export_service.checks_to_json(results), export_service.check_rows(results))
    return 0 if all(r.passed for r in results) else 1


_HANDLERS = {
    "weight": _weight,
    "psi0": _psi0,
    "domain": _domain,
    "constants": _constants,
    "operators": _operators,
    "generate": _generate,
    "commutant": _commutant,
    "verify": _verify,
}


def run(config: RunConfig) -> int:
    """執行子命令並回傳結束碼（0 成功、1 檢查或計算失敗）。"""
    logger.info("執行 %s：n=%d, k=%d", config.command, config.n, config.k)
    try:
        return _HANDLERS[config.command](config)
    except MvopError:
        logger.exception("%s 執行失敗", config.command)
        return 1


def main(argv: list[str] | None = None) -> int:
    """主程式入口。

    Returns:
        結束碼：0 成功、1 檢查失敗、2 參數錯誤。
    """
    setup_logger()
    args = parse_args(argv)
    logger.info("su-mvop v%s 啟動", __version__)
    try:
        config = build_config(args)
    except ValueError as exc:
        print(f"mvop: 參數錯誤：{exc}", file=sys.stderr)
        return 2
    try:
        return run(config)
    except ValueError as exc:
        print(f"mvop: 參數錯誤：{exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
