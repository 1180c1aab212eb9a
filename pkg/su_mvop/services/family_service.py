"""矩陣值正交多項式族的生成與檢查。

依總次數分塊正交化單項式基底 {φ^e ε_r}；可用算子時以 D_plus、
D_minus 的聯合特徵分解把每個次數塊拆成多重次數 d 的各行，並以
φ = (1,…,1) 的行和正規化。其餘情形以多重次數為鍵做矩陣 Gram–Schmidt。
"""

import logging
from collections.abc import Sequence
from fractions import Fraction

import numpy as np

from su_mvop.config import load_settings
from su_mvop.errors import ConsistencyError, LabelAmbiguityError, RecurrenceError
from su_mvop.models.family import QEntry, QFamily, RecurrenceCoefficients
from su_mvop.models.operators import DiffOperator
from su_mvop.models.phipoly import Monomial, PhiPoly, exact_zeros, multi_degrees
from su_mvop.services.operator_service import apply, build_operators, eigenvalue_diagonal
from su_mvop.services.quadrature_service import moment_matrix
from su_mvop.services.spherical_service import bottom_set, expected_norm
from su_mvop.services.weight_service import build_weight_spec

logger = logging.getLogger(__name__)

# 行和小於此值時改用首項係數正規化
_COLUMN_SUM_TOL = 1e-9
# 遞迴展開殘差容差（相對）
_RECURRENCE_TOL = 1e-9

Basis = tuple[tuple[Monomial, int], ...]


def is_labeled(n: int, k: int) -> bool:
    """是否能以特徵值唯一標記各行。"""
    return (k == 1 and n <= 3) or (k == 0 and n == 1)


# ---- 座標 ----


def _index(basis: Basis) -> dict[tuple[Monomial, int], int]:
    return {key: pos for pos, key in enumerate(basis)}


def _to_poly(vectors: np.ndarray, basis: Basis, n: int, size: int) -> PhiPoly:
    """座標矩陣 (dim × c) 轉為 N×c 多項式。"""
    cols = vectors.shape[1]
    terms: dict[Monomial, np.ndarray] = {}
    for pos, (mono, r) in enumerate(basis):
        row = vectors[pos]
        if not np.any(row):
            continue
        if mono not in terms:
            terms[mono] = np.zeros((size, cols))
        terms[mono][r] = row
    return PhiPoly(n, (size, cols), terms)


def _coordinates(poly: PhiPoly, basis: Basis) -> np.ndarray:
    """N×c 多項式的座標矩陣；超出基底的項視為錯誤。"""
    index = _index(basis)
    out = np.zeros((len(basis), poly.shape[1]))
    for mono, coef in poly.to_float().terms.items():
        for r in range(poly.shape[0]):
            key = (mono, r)
            if key not in index:
                if np.any(coef[r]):
                    raise ConsistencyError(f"單項式 {mono} 超出基底範圍")
                continue
            out[index[key]] = coef[r]
    return out


def _operator_matrix(operator: DiffOperator, basis: Basis, n: int, size: int) -> np.ndarray:
    """算子在基底上的矩陣（精確作用後轉為浮點）。"""
    index = _index(basis)
    matrix = np.zeros((len(basis), len(basis)))
    for pos, (mono, r) in enumerate(basis):
        unit = exact_zeros((size, 1))
        unit[r, 0] = Fraction(1)
        image = apply(operator, PhiPoly(n, (size, 1), {mono: unit}))
        for out_mono, coef in image.terms.items():
            for out_r in range(size):
                value = coef[out_r, 0]
                if value:
                    matrix[index[(out_mono, out_r)], pos] = float(value)
    return matrix


# ---- 正交化 ----


def _project_out(block: np.ndarray, lower: np.ndarray, gram: np.ndarray) -> np.ndarray:
    # 兩次投影以降低捨入誤差
    for _ in range(2):
        if lower.shape[1]:
            block = block - lower @ (lower.T @ gram @ block)
    return block


def _lowdin(block: np.ndarray, gram: np.ndarray) -> np.ndarray:
    overlap = block.T @ gram @ block
    overlap = (overlap + overlap.T) / 2
    values, vectors = np.linalg.eigh(overlap)
    if values.min() <= 0:
        raise ConsistencyError("Gram 矩陣不是正定矩陣")
    return block @ (vectors @ np.diag(values ** -0.5) @ vectors.T)


def _scale(predicted: list[tuple[Monomial, int, Fraction, Fraction]]) -> float:
    return max(1.0, max(abs(float(p)) + abs(float(m)) for _, _, p, m in predicted))


def _check_collisions(
    predicted: list[tuple[Monomial, int, Fraction, Fraction]], tol: float,
) -> None:
    """預測特徵值對在相對容差 tol 內相同即視為碰撞。"""
    threshold = tol * _scale(predicted)
    collisions = [
        ((d1, s1), (d2, s2))
        for i, (d1, s1, p1, m1) in enumerate(predicted)
        for d2, s2, p2, m2 in predicted[i + 1:]
        if abs(float(p1 - p2)) + abs(float(m1 - m2)) <= threshold
    ]
    if collisions:
        raise LabelAmbiguityError(f"特徵值碰撞：{collisions}", collisions)


def _joint_eigenvectors(
    a_plus: np.ndarray, a_minus: np.ndarray, tol: float,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """先對 A⁺ 分解，再於每個簡併子空間內對 A⁻ 分解。"""
    values, vectors = np.linalg.eigh(a_plus)
    scale = max(1.0, float(np.max(np.abs(values))))
    columns, plus_values, minus_values = [], [], []
    start = 0
    while start < len(values):
        stop = start + 1
        while stop < len(values) and values[stop] - values[start] < tol * scale:
            stop += 1
        cluster = vectors[:, start:stop]
        inner = cluster.T @ a_minus @ cluster
        inner_values, inner_vectors = np.linalg.eigh((inner + inner.T) / 2)
        rotated = cluster @ inner_vectors
        for c in range(rotated.shape[1]):
            vec = rotated[:, c]
            columns.append(vec)
            plus_values.append(float(vec @ a_plus @ vec))
            minus_values.append(float(inner_values[c]))
        start = stop
    return np.stack(columns, axis=1), np.asarray(plus_values), np.asarray(minus_values)


def _match(
    plus: np.ndarray, minus: np.ndarray,
    predicted: list[tuple[Monomial, int, Fraction, Fraction]], tol: float,
) -> list[int]:
    """每個預測標籤對應的特徵向量索引。"""
    scale = _scale(predicted)
    assignment = []
    used: set[int] = set()
    for d, sigma, p, m in predicted:
        distance = np.abs(plus - float(p)) + np.abs(minus - float(m))
        best = int(np.argmin(distance))
        if best in used or distance[best] > tol * scale:
            raise ConsistencyError(
                f"d={d}, σ={sigma} 的預測特徵值 ({p}, {m}) 找不到對應"
            )
        used.add(best)
        assignment.append(best)
    return assignment


def _normalize(
    vector: np.ndarray, basis: Basis, leading: int,
) -> tuple[np.ndarray, str]:
    total = sum(vector[pos] for pos in range(len(basis)))
    if abs(total) > _COLUMN_SUM_TOL:
        return vector / total, "column-sum"
    logger.warning("行和為零，改用首項係數正規化")
    return vector / vector[leading], "leading-coefficient"


# ---- 生成 ----


def generate(n: int, k: int, max_degree: int, cap: int | None = None) -> QFamily:
    """生成總次數不超過 max_degree 的 Q_d。

    Args:
        n: 秩。
        k: 表示 kω_1 的 k。
        max_degree: 最大總次數。
        cap: 積分 Fourier 次數上限。

    Returns:
        QFamily。

    Raises:
        LabelAmbiguityError: 預測特徵值碰撞。
        ConsistencyError: 數值分解與預測不符。
    """
    if max_degree < 0:
        raise ValueError("max_degree 必須為非負整數")
    spec = build_weight_spec(n, k)
    size = spec.size
    basis, gram = moment_matrix(spec, max_degree, cap)
    index = _index(basis)
    labeled = is_labeled(n, k)
    tol = load_settings().eigen_tol
    if labeled:
        d_plus, d_minus = build_operators(n, k, max_degree)
        op_plus = _operator_matrix(d_plus, basis, n, size)
        op_minus = _operator_matrix(d_minus, basis, n, size)
    lower = np.zeros((len(basis), 0))
    entries: dict[Monomial, QEntry] = {}
    for m in range(max_degree + 1):
        degrees = multi_degrees(n, m)
        if labeled:
            block_idx = [pos for pos, (mono, _) in enumerate(basis) if sum(mono) == m]
            block = np.eye(len(basis))[:, block_idx]
            block = _lowdin(_project_out(block, lower, gram), gram)
            a_plus = block.T @ gram @ op_plus @ block
            a_minus = block.T @ gram @ op_minus @ block
            vectors, plus_vals, minus_vals = _joint_eigenvectors(
                (a_plus + a_plus.T) / 2, (a_minus + a_minus.T) / 2, tol,
            )
            predicted = []
            for d in degrees:
                gp = eigenvalue_diagonal(n, k, d, 1)
                gm = eigenvalue_diagonal(n, k, d, -1)
                predicted.extend((d, s, gp[s], gm[s]) for s in range(size))
            _check_collisions(predicted, tol)
            assignment = _match(plus_vals, minus_vals, predicted, tol)
            columns = block @ vectors
            for start, d in zip(range(0, len(predicted), size), degrees):
                cols, rules = [], []
                for s in range(size):
                    vec = columns[:, assignment[start + s]]
                    vec, rule = _normalize(vec, basis, index[(d, s)])
                    cols.append(vec)
                    rules.append(rule)
                coords = np.stack(cols, axis=1)
                h = coords.T @ gram @ coords
                entries[d] = QEntry(
                    degree=d,
                    q=_to_poly(coords, basis, n, size),
                    h=np.diag(np.diag(h)),
                    gamma_plus=eigenvalue_diagonal(n, k, d, 1),
                    gamma_minus=eigenvalue_diagonal(n, k, d, -1),
                    normalization=tuple(rules),
                )
            lower = np.concatenate([lower, block], axis=1)
        else:
            for d in degrees:
                cols = [index[(d, r)] for r in range(size)]
                block = _project_out(np.eye(len(basis))[:, cols], lower, gram)
                h = block.T @ gram @ block
                entries[d] = QEntry(
                    degree=d,
                    q=_to_poly(block, basis, n, size),
                    h=(h + h.T) / 2,
                    normalization=("monic",) * size,
                )
                lower = np.concatenate([lower, _lowdin(block, gram)], axis=1)
        logger.debug("次數 %d 完成：%d 個多重次數", m, len(degrees))
    logger.info(
        "正交多項式族完成：n=%d, k=%d, 次數 ≤ %d, 標記=%s", n, k, max_degree, labeled,
    )
    return QFamily(
        n=n, k=k, max_degree=max_degree, labeled=labeled, entries=entries,
        spec=spec, basis=basis, moments=gram,
    )


# ---- 遞迴 ----


def _shift(poly: PhiPoly, j: int) -> PhiPoly:
    return poly.times_monomial(tuple(int(i == j - 1) for i in range(poly.nvars)))


def extract_recurrence(family: QFamily, d: Sequence[int], j: int) -> RecurrenceCoefficients:
    """φ_j Q_d = Σ_{d'} Q_{d'} X_{d'}，X_{d'} = H_{d'}⁻¹⟨Q_{d'}, φ_j Q_d⟩。

    Raises:
        ValueError: |d| + 1 超過族的最大次數。
        RecurrenceError: 展開殘差超過容差。
    """
    d = tuple(d)
    level = sum(d)
    if level + 1 > family.max_degree:
        raise ValueError(f"需要次數 {level + 1} 的多項式，族只到 {family.max_degree}")
    if not 1 <= j <= family.n:
        raise ValueError(f"變數索引 j={j} 超出範圍")
    gram = family.moments
    target = _coordinates(_shift(family[d].q, j), family.basis)
    approx = np.zeros_like(target)
    parts: dict[int, dict[Monomial, np.ndarray]] = {1: {}, 0: {}, -1: {}}
    for other, entry in family.entries.items():
        offset = sum(other) - level
        if offset not in parts:
            continue
        coords = _coordinates(entry.q, family.basis)
        x = np.linalg.solve(entry.h, coords.T @ gram @ target)
        parts[offset][other] = x
        approx += coords @ x
    residual = float(np.max(np.abs(target - approx)))
    scale = max(1.0, float(np.max(np.abs(target))))
    if residual > _RECURRENCE_TOL * scale:
        raise RecurrenceError(f"φ_{j}Q_{d} 展開殘差 {residual:.3e} 過大")
    return RecurrenceCoefficients(
        degree=d, variable=j, a=parts[1], b=parts[0], c=parts[-1], residual=residual,
    )


# ---- 檢查 ----


def _all_coordinates(family: QFamily) -> tuple[np.ndarray, list[Monomial]]:
    blocks, owners = [], []
    for d, entry in family.entries.items():
        coords = _coordinates(entry.q, family.basis)
        blocks.append(coords)
        owners.extend([d] * coords.shape[1])
    return np.concatenate(blocks, axis=1), owners


def check_orthogonality(family: QFamily) -> float:
    """Gram 矩陣中不同 d 之間元素的最大絕對值。"""
    coords, owners = _all_coordinates(family)
    full = coords.T @ family.moments @ coords
    mask = np.array([[a != b for b in owners] for a in owners])
    return float(np.max(np.abs(full[mask]), initial=0.0))


def check_norm_law(family: QFamily) -> float:
    """H_d 對角元素與 dim(V_μ)²/weyl_dim(λ) 的最大相對誤差。"""
    if not family.labeled:
        raise ValueError("範數公式只適用於已標記的族")
    sigmas = [sigma for sigma, _ in bottom_set(family.n, family.k)]
    worst = 0.0
    for d, entry in family.entries.items():
        for s, sigma in enumerate(sigmas):
            expected = float(expected_norm(family.n, family.k, sigma, d))
            worst = max(worst, abs(entry.h[s, s] - expected) / expected)
    return worst


def check_column_sums(family: QFamily) -> float:
    """Q_d(1,…,1) 行和與 1 的最大差。"""
    worst = 0.0
    for entry in family.entries.values():
        if "column-sum" not in entry.normalization:
            continue
        sums = entry.q.at_ones().sum(axis=0)
        worst = max(worst, float(np.max(np.abs(sums - 1.0))))
    return worst


def check_eigenfunctions(family: QFamily) -> float:
    """apply(D±, Q_d) − Q_d·Γ±_d 的最大係數誤差。"""
    if not family.labeled:
        raise ValueError("特徵函數檢查只適用於已標記的族")
    d_plus, d_minus = build_operators(family.n, family.k, family.max_degree)
    worst = 0.0
    for d, entry in family.entries.items():
        for operator, gamma in ((d_plus, entry.gamma_plus), (d_minus, entry.gamma_minus)):
            image = apply(operator, entry.q)
            expected = entry.q.right_multiply(np.diag([float(g) for g in gamma]))
            worst = max(worst, image.max_abs_difference(expected))
    return worst


def check_invertible_leading(family: QFamily) -> bool:
    """堆疊矩陣 (A^0_{δ_i, j})_{i,j} 是否可逆。"""
    n, size = family.n, family.size
    zero = (0,) * n
    units = [tuple(int(i == j) for i in range(n)) for j in range(n)]
    stacked = np.zeros((n * size, n * size))
    for j in range(1, n + 1):
        rec = extract_recurrence(family, zero, j)
        for i, unit in enumerate(units):
            stacked[i * size:(i + 1) * size, (j - 1) * size:j * size] = rec.a[unit]
    rank = np.linalg.matrix_rank(stacked, tol=load_settings().svd_rtol * np.abs(stacked).max())
    return bool(rank == n * size)
