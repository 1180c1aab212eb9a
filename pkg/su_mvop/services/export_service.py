"""JSON 與 CSV 輸出。

各建構結果轉為可序列化的 dict（有理數以 "p/q" 字串表示），
再依輸出格式寫入檔案或標準輸出。
"""

import csv
import io
import json
import logging
import sys
from collections.abc import Iterable, Sequence
from dataclasses import asdict
from fractions import Fraction

import numpy as np

from su_mvop.models.family import QFamily
from su_mvop.models.laurent import LaurentPoly, MatrixLaurent
from su_mvop.models.operators import DiffOperator
from su_mvop.models.phipoly import PhiPoly
from su_mvop.models.reports import CheckResult, CommutantReport
from su_mvop.models.weights import BoundaryPoint, MeasureConstants, WeightSpec
from su_mvop.services.spherical_service import bottom_set, weyl_dim

logger = logging.getLogger(__name__)


def _scalar(value) -> str | float:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, complex | np.complexfloating):
        return float(value.real)
    return float(value)


def _matrix(arr: np.ndarray) -> list[list[str | float]]:
    return [[_scalar(x) for x in row] for row in np.asarray(arr)]


def composition_key(sigma: Sequence[int]) -> str:
    """(1, 0, 2) → "1.0.2"。"""
    return ".".join(str(x) for x in sigma)


def laurent_to_json(p: LaurentPoly) -> list[dict]:
    """[{"e": 指數, "num": 分子, "den": 分母}]，指數依字典序排列。"""
    return [
        {"e": list(exp), "num": str(coef.numerator), "den": str(coef.denominator)}
        for exp, coef in sorted(p.terms.items())
    ]


def matrix_laurent_to_json(m: MatrixLaurent) -> dict:
    rows, cols = m.shape
    return {
        "shape": [rows, cols],
        "entries": [[laurent_to_json(m[i, j]) for j in range(cols)] for i in range(rows)],
    }


def phipoly_to_json(q: PhiPoly) -> dict:
    """{"shape": [r, c], "terms": [{"m": 多重指數, "coef": 係數矩陣}]}。"""
    return {
        "shape": list(q.shape),
        "terms": [
            {"m": list(mono), "coef": _matrix(coef)}
            for mono, coef in sorted(q.terms.items(), key=lambda t: (sum(t[0]), t[0]))
        ],
    }


def weight_spec_to_json(spec: WeightSpec) -> dict:
    return {
        "n": spec.n,
        "k": spec.k,
        "size": spec.size,
        "provenance": spec.provenance,
        "prefactor": str(spec.prefactor),
        "w_pol": phipoly_to_json(spec.w_pol),
        "p": phipoly_to_json(spec.p),
    }


def constants_to_json(constants: MeasureConstants) -> dict:
    return {
        "n": constants.n,
        "c1": str(constants.c1),
        "selberg": str(constants.selberg),
        "volume": constants.volume,
    }


def bottom_set_to_json(n: int, k: int) -> dict:
    """以組合字串為鍵的底層集合與維度表。"""
    return {
        composition_key(sigma): {
            "left": list(weight.left),
            "right": list(weight.right),
            "weyl_dim": weyl_dim(weight),
        }
        for sigma, weight in bottom_set(n, k)
    }


def operator_to_json(operator: DiffOperator) -> dict:
    return {
        "label": operator.label,
        "size": operator.size,
        "terms": [
            {"alpha": list(alpha), "coef": phipoly_to_json(coef)}
            for alpha, coef in sorted(operator.coefficients.items())
            if not coef.is_zero()
        ],
        "eigenvalues": [
            {"d": list(d), "values": [str(v) for v in values]}
            for d, values in operator.eigenvalue_table.items()
        ],
    }


def family_to_json(family: QFamily) -> dict:
    entries = []
    for d, entry in family.entries.items():
        entries.append({
            "d": list(d),
            "q": phipoly_to_json(entry.q),
            "h": _matrix(entry.h),
            "gamma_plus": None if entry.gamma_plus is None
            else [str(g) for g in entry.gamma_plus],
            "gamma_minus": None if entry.gamma_minus is None
            else [str(g) for g in entry.gamma_minus],
            "normalization": list(entry.normalization),
        })
    return {
        "n": family.n,
        "k": family.k,
        "max_degree": family.max_degree,
        "labeled": family.labeled,
        "entries": entries,
    }


def commutant_to_json(report: CommutantReport) -> dict:
    payload = asdict(report)
    payload["verdict"] = report.verdict.value
    return payload


def checks_to_json(results: Iterable[CheckResult]) -> list[dict]:
    return [asdict(r) for r in results]


# ---- CSV 列 ----


def boundary_rows(points: Sequence[BoundaryPoint]) -> tuple[list[str], list[list[float]]]:
    """邊界取樣的欄位：b_1..b_n、x_1..x_n。"""
    if not points:
        return [], []
    n = len(points[0].alcove)
    header = [f"b{i}" for i in range(1, n + 1)] + [f"x{i}" for i in range(1, n + 1)]
    return header, [list(p.alcove) + list(p.coordinates) for p in points]


def bottom_set_rows(n: int, k: int) -> tuple[list[str], list[list]]:
    header = ["sigma", "left", "right", "weyl_dim"]
    rows = [
        [composition_key(sigma), composition_key(w.left), composition_key(w.right), weyl_dim(w)]
        for sigma, w in bottom_set(n, k)
    ]
    return header, rows


def eigenvalue_rows(family: QFamily) -> tuple[list[str], list[list]]:
    """以 d 為鍵的特徵值與範數表，每個 (d, σ) 一列。"""
    header = ["d", "column", "gamma_plus", "gamma_minus", "h"]
    rows = []
    for d, entry in family.entries.items():
        for s in range(family.size):
            rows.append([
                composition_key(d),
                s,
                "" if entry.gamma_plus is None else str(entry.gamma_plus[s]),
                "" if entry.gamma_minus is None else str(entry.gamma_minus[s]),
                float(entry.h[s, s]),
            ])
    return header, rows


def operator_rows(*operators: DiffOperator) -> tuple[list[str], list[list]]:
    """各算子的特徵值表，每個 (算子, d) 一列。"""
    size = max(op.size for op in operators)
    header = ["operator", "d"] + [f"column{s}" for s in range(size)]
    rows = [
        [op.label, composition_key(d)] + [str(v) for v in values]
        for op in operators
        for d, values in op.eigenvalue_table.items()
    ]
    return header, rows


def check_rows(results: Iterable[CheckResult]) -> tuple[list[str], list[list]]:
    header = ["name", "anchor", "passed", "detail"]
    return header, [[r.name, r.anchor, r.passed, r.detail] for r in results]


def render_table(results: Sequence[CheckResult]) -> str:
    """對齊的檢查結果表。"""
    header = ("檢查", "依據", "結果", "細節")
    rows = [(r.name, r.anchor, "PASS" if r.passed else "FAIL", r.detail) for r in results]
    widths = [max(len(str(row[i])) for row in [header, *rows]) for i in range(4)]
    lines = ["  ".join(str(cell).ljust(w) for cell, w in zip(row, widths)).rstrip()
             for row in [header, *rows]]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


# ---- 寫出 ----


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)
    logger.info("已寫出 %s", out)


def write_json(payload, out: str | None = None) -> None:
    """寫出 JSON，out 為 None 時寫到標準輸出。"""
    _emit(json.dumps(payload, ensure_ascii=False, indent=2) + "\n", out)


def write_csv(header: Sequence[str], rows: Iterable[Sequence], out: str | None = None) -> None:
    """寫出 CSV，out 為 None 時寫到標準輸出。"""
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    writer.writerow(header)
    writer.writerows(rows)
    _emit(buffer.getvalue(), out)
