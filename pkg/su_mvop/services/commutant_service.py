"""矩陣權重的交換子代數與可約性。

A_W = {Y | YW(x) = W(x)Y}，𝒜_W = {Y | YW(x) = W(x)Y*}（實向量空間）。
數值路徑在環面原像上取樣，以奇異值門檻求零空間；精確路徑對
W_pol 的各係數矩陣求有理零空間。
"""

import logging
from collections.abc import Iterable

import numpy as np
import sympy

from su_mvop.config import load_settings
from su_mvop.models.phipoly import PhiPoly
from su_mvop.models.reports import CommutantReport
from su_mvop.models.weights import WeightSpec
from su_mvop.services.laurent_calculus import random_torus_points
from su_mvop.services.spherical_service import phi_on_torus
from su_mvop.services.weight_service import (
    coefficient_matrices,
    linear_coefficient,
    pair_coefficient,
    weight_polynomial,
)

logger = logging.getLogger(__name__)

# 重新取樣的最多次數
_MAX_RESAMPLES = 4


def _commutation_matrix(size: int) -> np.ndarray:
    """P·vec(X) = vec(Xᵀ)（列優先展開）。"""
    perm = np.zeros((size * size, size * size))
    for i in range(size):
        for j in range(size):
            perm[i * size + j, j * size + i] = 1.0
    return perm


def _null_basis(system: np.ndarray, rtol: float) -> np.ndarray:
    """以奇異值門檻求零空間的正交基底（各行）。"""
    _, singular, vh = np.linalg.svd(system)
    if singular.size == 0 or singular[0] == 0:
        return np.eye(system.shape[1])
    rank = int(np.count_nonzero(singular > rtol * singular[0]))
    return vh[rank:].conj().T


def _systems(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """由取樣值 (P, N, N) 堆疊 A_W 與 𝒜_W 的線性條件。"""
    size = values.shape[1]
    eye = np.eye(size)
    perm = _commutation_matrix(size)
    commute, star = [], []
    for w in values:
        right = np.kron(eye, w.T)
        left = np.kron(w, eye)
        commute.append(right - left)
        k1 = right - left @ perm
        k2 = right + left @ perm
        star.append(np.block([[k1.real, -k2.imag], [k1.imag, k2.real]]))
    return np.concatenate(commute), np.concatenate(star)


def _star_map(vectors: np.ndarray, size: int) -> np.ndarray:
    # (A, B) ↦ (Aᵀ, −Bᵀ)，對應 Y ↦ Y*
    half = size * size
    out = np.empty_like(vectors)
    for c in range(vectors.shape[1]):
        a = vectors[:half, c].reshape(size, size)
        b = vectors[half:, c].reshape(size, size)
        out[:half, c] = a.T.reshape(-1)
        out[half:, c] = -b.T.reshape(-1)
    return out


def _dimensions(
    w_pol: PhiPoly, n: int, samples: int, seed: int, rtol: float,
) -> tuple[int, np.ndarray]:
    angles = random_torus_points(n, samples, seed)
    values = w_pol.to_float().evaluate(phi_on_torus(angles, n))
    commute, star = _systems(values)
    return _null_basis(commute, rtol).shape[1], _null_basis(star, rtol)


def analyze(spec: WeightSpec, samples: int | None = None, seed: int = 0) -> CommutantReport:
    """以取樣計算 dim A_W、dim 𝒜_W 與 ∗ 封閉性。

    兩批獨立取樣的維度不一致時，取樣數加倍後重算。

    Args:
        spec: 權重規格。
        samples: 取樣點數，至少 N²+1。
        seed: 隨機種子。
    """
    settings = load_settings()
    size = spec.size
    minimum = size * size + 1
    samples = samples or 2 * minimum
    if samples < minimum:
        raise ValueError(f"取樣點數至少需要 {minimum}")
    for _ in range(_MAX_RESAMPLES):
        dim_aw, star_basis = _dimensions(spec.w_pol, spec.n, samples, seed, settings.svd_rtol)
        check_aw, check_star = _dimensions(
            spec.w_pol, spec.n, samples, seed + 1, settings.svd_rtol,
        )
        if dim_aw == check_aw and star_basis.shape[1] == check_star.shape[1]:
            break
        logger.warning("取樣結果不一致（%d 點），加倍重算", samples)
        samples *= 2
    image = _star_map(star_basis, size)
    residual = image - star_basis @ (star_basis.T @ image)
    star_invariant = bool(
        star_basis.shape[1] == 0 or np.max(np.abs(residual)) < 1e-8
    )
    dim_script = star_basis.shape[1]
    report = CommutantReport(
        n=spec.n,
        k=spec.k,
        dim_aw=dim_aw,
        dim_script_aw=dim_script,
        star_invariant=star_invariant,
        hermitian_match=dim_script == dim_aw,
        samples=samples,
    )
    logger.info(
        "交換子分析：n=%d, k=%d, dim A_W=%d, dim 𝒜_W=%d, 判定 %s",
        spec.n, spec.k, dim_aw, dim_script, report.verdict.value,
    )
    return report


# ---- 精確路徑 ----


def _coefficient_matrices(w_pol: PhiPoly) -> list[sympy.Matrix]:
    return [sympy.Matrix(c.tolist()) for c in w_pol.terms.values()]


def _commute_rows(
    coefs: Iterable[sympy.Matrix], size: int, cells: list[tuple[int, int]],
) -> sympy.Matrix:
    """YC − CY = 0 的係數列，未知數為 cells 中的 Y 元素。"""
    position = {cell: pos for pos, cell in enumerate(cells)}
    rows = []
    for c in coefs:
        for i in range(size):
            for j in range(size):
                row = [0] * len(cells)
                for m in range(size):
                    # (YC)_ij = Σ_m Y_im C_mj，(CY)_ij = Σ_m C_im Y_mj
                    if (i, m) in position:
                        row[position[(i, m)]] += c[m, j]
                    if (m, j) in position:
                        row[position[(m, j)]] -= c[i, m]
                rows.append(row)
    return sympy.Matrix(rows)


def _star_rows(coefs: Iterable[sympy.Matrix], size: int) -> sympy.Matrix:
    """YC = CY* 的實係數列，未知數為 (A, B)，Y = A + iB。"""
    half = size * size
    rows = []
    for c in coefs:
        for i in range(size):
            for j in range(size):
                # AC − CAᵀ = 0 與 BC + CBᵀ = 0
                real = [0] * (2 * half)
                imag = [0] * (2 * half)
                for m in range(size):
                    real[i * size + m] += c[m, j]
                    real[j * size + m] -= c[i, m]
                    imag[half + i * size + m] += c[m, j]
                    imag[half + j * size + m] += c[i, m]
                rows.extend([real, imag])
    return sympy.Matrix(rows)


def exact_commutant_dimension(w_pol: PhiPoly) -> int:
    """A_W 在 ℚ 上的維度（W_pol 各係數矩陣的共同交換子）。"""
    size = w_pol.shape[0]
    cells = [(i, j) for i in range(size) for j in range(size)]
    return len(_commute_rows(_coefficient_matrices(w_pol), size, cells).nullspace())


def exact_star_dimension(w_pol: PhiPoly) -> tuple[int, bool]:
    """𝒜_W 的實維度與 ∗ 封閉性（精確）。"""
    size = w_pol.shape[0]
    half = size * size
    system = _star_rows(_coefficient_matrices(w_pol), size)
    basis = system.nullspace()
    if not basis:
        return 0, True
    span = sympy.Matrix.hstack(*basis)
    for vec in basis:
        a = sympy.Matrix(size, size, list(vec[:half]))
        b = sympy.Matrix(size, size, list(vec[half:]))
        image = sympy.Matrix.vstack(a.T.reshape(half, 1), (-b.T).reshape(half, 1))
        if sympy.Matrix.hstack(span, image).rank() != span.rank():
            return len(basis), False
    return len(basis), True


def structured_checks(n: int) -> bool:
    """重演 A_W 平凡性與 𝒜_W 共軛封閉性的係數論證。

    1. W_pol 中 φ_iφ_{n+1−i} 與 φ_1 的係數等於封閉公式。
    2. W_(i) 的前 i 與後 i 個對角元素為零。
    3. 由 W_(i) 對角元素相異逐步消去 Y_kj，剩餘支撐落在
       {(k,k), (k,n+2−k)}。
    4. 在該支撐上加入 W_(φ_1) 後，交換子只剩單位矩陣的倍數。
    5. 𝒜_W 的精確維度為 1 且在 ∗ 下封閉。
    """
    if n < 2:
        raise ValueError("結構檢查需要 n ≥ 2")
    w_pol = weight_polynomial(n, 1)
    size = n + 1
    for mono, expected in coefficient_matrices(n).items():
        if not np.all(w_pol.coefficient(mono) == expected):
            logger.warning("φ^%s 的係數與封閉公式不符", mono)
            return False
    pair_matrices = []
    for i in range(1, (n + 1) // 2 + 1):
        expected = pair_coefficient(i, n)
        diagonal = [expected[k, k] for k in range(size)]
        if any(diagonal[:i]) or any(diagonal[size - i:]):
            logger.warning("W_(%d) 的前後 %d 個對角元素不為零", i, i)
            return False
        pair_matrices.append(expected)
    linear = linear_coefficient(n)

    support = {(k, j) for k in range(size) for j in range(size)}
    for matrix in pair_matrices:
        # (YW − WY)_kj = Y_kj (W_jj − W_kk)
        support = {(k, j) for k, j in support if matrix[k, k] == matrix[j, j]}
    allowed = {(k, k) for k in range(size)} | {(k, n - k) for k in range(size)}
    if not support <= allowed:
        logger.warning("消去後的支撐 %s 超出預期", sorted(support - allowed))
        return False

    cells = sorted(support)
    coefs = [sympy.Matrix(m.tolist()) for m in pair_matrices + [linear]]
    null = _commute_rows(coefs, size, cells).nullspace()
    if len(null) != 1:
        logger.warning("支撐上的交換子維度為 %d", len(null))
        return False
    vec = null[0]
    values = {cell: vec[pos] for pos, cell in enumerate(cells)}
    if any(values.get((k, j), 0) != (values[(0, 0)] if k == j else 0)
           for k in range(size) for j in range(size)):
        logger.warning("交換子不是單位矩陣的倍數")
        return False

    dim_star, closed = exact_star_dimension(w_pol)
    if dim_star != 1 or not closed:
        logger.warning("𝒜_W 維度 %d，∗ 封閉=%s", dim_star, closed)
        return False
    logger.info("結構檢查通過：n=%d", n)
    return True
