"""矩陣權重、純量密度與正交區域。

建立 W_pol（k=1 封閉公式或由 Ψ₀ 在環面上相乘後改寫）、純量密度 P、
測度常數，以及 φ(A_c) 的成員判定、格點體積與邊界取樣。
"""

import itertools
import logging
from collections.abc import Sequence
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, gamma, pi, sqrt

import numpy as np
from scipy import ndimage, special

from su_mvop.config import load_settings
from su_mvop.models.laurent import LaurentPoly, MatrixLaurent
from su_mvop.models.phipoly import Monomial, PhiPoly, exact_zeros
from su_mvop.models.weights import BoundaryPoint, MeasureConstants, WeightSpec
from su_mvop.services.spherical_service import (
    phi_on_torus,
    psi0_for,
    row_weights,
)
from su_mvop.services.symmetric_functions import express_in_phi, power_sum

logger = logging.getLogger(__name__)

# 視為 P = 0 的相對門檻
_ZERO_TOL = 1e-9
# 根判定時導式根的圓盤放寬量
_CIRCLE_MARGIN = 1e-9
# 體積計數時邊界格子的細分倍數
_REFINE = 5
# 需細分的邊界帶層數
_BAND_LAYERS = 6
# Selberg 積分支援的指數
_SELBERG_EXPONENTS = (0.5, 1.0, 1.5)


# ---- 矩陣權重 ----


def _elementary_terms(m: int, n: int) -> dict[Monomial, Fraction]:
    """e_m = binom(n+1, m)·φ_m，e_0 = e_{n+1} = 1。"""
    if m in (0, n + 1):
        return {(0,) * n: Fraction(1)}
    if 1 <= m <= n:
        return {tuple(int(j == m - 1) for j in range(n)): Fraction(comb(n + 1, m))}
    return {}


def _product(
    left: dict[Monomial, Fraction], right: dict[Monomial, Fraction],
) -> dict[Monomial, Fraction]:
    result: dict[Monomial, Fraction] = {}
    for m1, c1 in left.items():
        for m2, c2 in right.items():
            mono = tuple(a + b for a, b in zip(m1, m2))
            result[mono] = result.get(mono, Fraction(0)) + c1 * c2
    return {m: c for m, c in result.items() if c}


def _closed_form_entry(a: int, b: int, n: int) -> dict[Monomial, Fraction]:
    # 1 起算；j ≤ b 時直接套用公式，否則以翻轉對稱換到 (n+2−b, n+2−a)
    j = n + 2 - a
    if j > b:
        a, b = n + 2 - b, n + 2 - a
        j = n + 2 - a
    denominator = comb(n, j - 1) * comb(n, b - 1)
    total: dict[Monomial, Fraction] = {}
    for r in range(j):
        weight = Fraction(b + 1 - j + 2 * r, denominator)
        if not weight:
            continue
        term = _product(_elementary_terms(b + r, n), _elementary_terms(j - 1 - r, n))
        for mono, coef in term.items():
            total[mono] = total.get(mono, Fraction(0)) + weight * coef
    return {m: c for m, c in total.items() if c}


def weight_closed_form(n: int) -> PhiPoly:
    """k = 1 的 W_pol 封閉公式。

    j = n+2−a ≤ b 時
    W_ab = Σ_{r=0}^{j−1} (b+1−j+2r)·e_{b+r}·e_{j−1−r} / (binom(n,j−1)·binom(n,b−1))，
    其中 e_m = binom(n+1,m)φ_m；其餘元素由 W_ab = W_{n+2−b, n+2−a} 得到。
    """
    if n < 1:
        raise ValueError("n 必須 ≥ 1")
    size = n + 1
    entries = [
        [PhiPoly.scalar(n, _closed_form_entry(a, b, n)) for b in range(1, size + 1)]
        for a in range(1, size + 1)
    ]
    return PhiPoly.from_entries(n, entries)


def weight_on_torus_laurent(n: int, k: int) -> MatrixLaurent:
    """Ψ*ΛΨ 作為環面上的 Laurent 矩陣。"""
    psi = psi0_for(n, k)
    weights = row_weights(n, k)
    weighted = MatrixLaurent.from_function(
        n, psi.shape[0], psi.shape[1], lambda i, j: psi[i, j] * weights[i],
    )
    return psi.adjoint() @ weighted


def weight_from_psi(n: int, k: int) -> PhiPoly:
    """將 Ψ*ΛΨ 逐元素改寫為 φ 多項式。"""
    product = weight_on_torus_laurent(n, k)
    rows, cols = product.shape
    entries = [[express_in_phi(product[i, j]) for j in range(cols)] for i in range(rows)]
    logger.debug("由 Ψ₀ 建立權重：n=%d, k=%d, N=%d", n, k, rows)
    return PhiPoly.from_entries(n, entries)


@lru_cache(maxsize=16)
def weight_polynomial(n: int, k: int) -> PhiPoly:
    """W_pol：k = 1 使用封閉公式，其餘由 Ψ₀ 計算。"""
    if k < 0:
        raise ValueError("k 必須為非負整數")
    if k == 1:
        return weight_closed_form(n)
    return weight_from_psi(n, k)


def weight_on_torus(n: int, k: int, angles: np.ndarray) -> np.ndarray:
    """數值計算 Ψ(a)*ΛΨ(a)，回傳形狀 (P, N, N)。"""
    psi = psi0_for(n, k).evaluate_angles(angles)
    weights = np.asarray(row_weights(n, k), dtype=float)
    return np.einsum("pia,i,pib->pab", psi.conj(), weights, psi)


def pair_coefficient(i: int, n: int) -> np.ndarray:
    """W_pol 中 φ_iφ_{n+1−i} 係數的封閉公式（1 ≤ i ≤ ⌊(n+1)/2⌋）。

    對角元素在 k = i+1..n+1−i 為
    (n+1−2i)·binom(n+1,i)·binom(n+1,n+1−i) / (binom(n,n+1−k)·binom(n,k−1))。
    """
    if not 1 <= i <= (n + 1) // 2:
        raise ValueError(f"i={i} 超出範圍")
    out = exact_zeros((n + 1, n + 1))
    for k in range(i + 1, n + 2 - i):
        out[k - 1, k - 1] = Fraction(
            (n + 1 - 2 * i) * comb(n + 1, i) * comb(n + 1, n + 1 - i),
            comb(n, n + 1 - k) * comb(n, k - 1),
        )
    return out


def linear_coefficient(n: int) -> np.ndarray:
    """W_pol 中 φ_1 係數的封閉公式。

    Σ_{k=1}^{n} n(n+1)/(binom(n,n+1−k)·binom(n,k))·E_{k,k+1} + (n+1)·E_{n+1,1}
    """
    out = exact_zeros((n + 1, n + 1))
    for k in range(1, n + 1):
        out[k - 1, k] = Fraction(n * (n + 1), comb(n, n + 1 - k) * comb(n, k))
    out[n, 0] += Fraction(n + 1)
    return out


def pair_monomial(i: int, n: int) -> Monomial:
    """φ_iφ_{n+1−i} 的多重指數。"""
    mono = [0] * n
    mono[i - 1] += 1
    mono[n - i] += 1
    return tuple(mono)


def coefficient_matrices(n: int) -> dict[Monomial, np.ndarray]:
    """W_(i) 與 W_(φ1) 的封閉公式，以對應的多重指數為鍵。"""
    matrices = {
        pair_monomial(i, n): pair_coefficient(i, n) for i in range(1, (n + 1) // 2 + 1)
    }
    matrices[tuple(int(j == 0) for j in range(n))] = linear_coefficient(n)
    return matrices


# ---- 純量密度 ----


def delta_laurent(n: int) -> LaurentPoly:
    """δ = ∏_{i<j}(t_i²−t_j²)²。"""
    result = LaurentPoly.constant(1, n)
    for factor in _root_factors(n):
        result = result * factor * factor
    return result


def abs_delta_laurent(n: int) -> LaurentPoly:
    """|δ| = ∏_{i<j}(t_i²−t_j²)(t_i^{−2}−t_j^{−2})，環面上非負。"""
    result = LaurentPoly.constant(1, n)
    for factor in _root_factors(n):
        result = result * factor * factor.conjugate()
    return result


def _root_factors(n: int) -> list[LaurentPoly]:
    factors = []
    for i, j in itertools.combinations(range(n + 1), 2):
        sq_i = tuple(2 * int(x == i) for x in range(n + 1))
        sq_j = tuple(2 * int(x == j) for x in range(n + 1))
        factors.append(LaurentPoly.monomial(sq_i, n) - LaurentPoly.monomial(sq_j, n))
    return factors


@lru_cache(maxsize=8)
def scalar_P(n: int) -> PhiPoly:
    """Hankel 行列式 det(p_{i+j−2}(u)) 改寫為 φ 多項式，在環面上等於 δ。"""
    if n < 1:
        raise ValueError("n 必須 ≥ 1")
    sums = [power_sum(k, n) for k in range(2 * n + 1)]
    hankel = MatrixLaurent.from_function(n, n + 1, n + 1, lambda i, j: sums[i + j])
    result = express_in_phi(hankel.determinant(), in_u=True)
    logger.debug("scalar_P(%d)：%d 項", n, len(result.terms))
    return result


def interior_sign(n: int) -> int:
    """P 在區域內部的符號 (−1)^{n(n+1)/2}。"""
    return -1 if (n * (n + 1) // 2) % 2 else 1


# ---- 常數 ----


def selberg_integral(n: int, s: float) -> float:
    """Γ(1+(n+1)s) / Γ(1+s)^{n+1}，s ∈ {1/2, 1, 3/2}。"""
    if s not in _SELBERG_EXPONENTS:
        raise ValueError(f"s={s} 不在支援範圍 {_SELBERG_EXPONENTS}")
    return float(special.gamma(1 + (n + 1) * s) / special.gamma(1 + s) ** (n + 1))


def measure_constants(n: int) -> MeasureConstants:
    """c1 = 1/(n+1)!、Selberg 值 (n+1)! 與區域體積。"""
    if n < 1:
        raise ValueError("n 必須 ≥ 1")
    binomials = 1
    for k in range(1, n + 1):
        binomials *= comb(n + 1, k)
    volume = (2 * sqrt(pi)) ** n / (gamma(1 + n / 2) * binomials)
    return MeasureConstants(
        n=n,
        c1=Fraction(1, factorial(n + 1)),
        selberg=Fraction(factorial(n + 1)),
        volume=volume,
    )


def build_weight_spec(n: int, k: int) -> WeightSpec:
    """組合權重規格。"""
    if k == 1:
        provenance = "closed-form"
    elif k == 0:
        provenance = "torus-product"
    else:
        provenance = "congruence-class"
    prefactor = Fraction(1)
    for j in range(1, n + 1):
        prefactor *= comb(n + 1, j)
    spec = WeightSpec(
        n=n,
        k=k,
        w_pol=weight_polynomial(n, k),
        p=scalar_P(n),
        prefactor=prefactor,
        provenance=provenance,
    )
    logger.info("權重規格完成：n=%d, k=%d, N=%d (%s)", n, k, spec.size, provenance)
    return spec


# ---- 實座標 ----


def real_to_phi(points: np.ndarray, n: int) -> np.ndarray:
    """實座標 (Re φ_1, Im φ_1, …[, φ_mid]) 轉為複數 φ，形狀 (P, n)。"""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if points.shape[1] != n:
        raise ValueError(f"實座標維度 {points.shape[1]} 與 n={n} 不符")
    phi = np.zeros((points.shape[0], n), dtype=complex)
    for i in range(n // 2):
        value = points[:, 2 * i] + 1j * points[:, 2 * i + 1]
        phi[:, i] = value
        phi[:, n - 1 - i] = value.conj()
    if n % 2:
        phi[:, n // 2] = points[:, -1]
    return phi


def phi_to_real(phi: np.ndarray, n: int) -> np.ndarray:
    """real_to_phi 的反向。"""
    phi = np.atleast_2d(np.asarray(phi, dtype=complex))
    columns = []
    for i in range(n // 2):
        columns.extend([phi[:, i].real, phi[:, i].imag])
    if n % 2:
        columns.append(phi[:, n // 2].real)
    return np.stack(columns, axis=1)


def _p_values(p_float: PhiPoly, real_points: np.ndarray, n: int) -> np.ndarray:
    return p_float.evaluate(real_to_phi(real_points, n))[:, 0, 0].real


# ---- 區域 ----


def _char_coefficients(phi: np.ndarray, n: int) -> np.ndarray:
    """Σ_r (−1)^r e_r z^{n+1−r} 的升冪係數，形狀 (P, n+2)。"""
    e = np.ones((phi.shape[0], n + 2), dtype=complex)
    for r in range(1, n + 1):
        e[:, r] = comb(n + 1, r) * phi[:, r - 1]
    signs = (-1.0) ** np.arange(n + 2)
    return (signs * e)[:, ::-1]


def _schur_stable(coef: np.ndarray) -> np.ndarray:
    """Schur–Cohn 遞迴：升冪係數列的所有根是否都在開單位圓盤內。"""
    coef = np.asarray(coef, dtype=complex)
    stable = np.ones(coef.shape[0], dtype=bool)
    while coef.shape[1] > 1:
        low, high = coef[:, :1], coef[:, -1:]
        stable &= np.abs(high[:, 0]) > np.abs(low[:, 0])
        reduced = (low.conj() * coef - high * coef[:, ::-1].conj())[:, :-1]
        scale = np.max(np.abs(reduced), axis=1, keepdims=True)
        coef = reduced / np.where(scale > 0, scale, 1.0)
    return stable


def _roots_on_circle(phi: np.ndarray, n: int, margin: float = _CIRCLE_MARGIN) -> np.ndarray:
    """特徵多項式的根是否全在單位圓上。

    係數自反，因此等價於導式的根都在閉單位圓盤內；以 z → (1+margin)z
    縮放後改用開圓盤判定。
    """
    coef = _char_coefficients(np.atleast_2d(phi), n)
    powers = np.arange(1, n + 2)
    derivative = coef[:, 1:] * powers * (1.0 + margin) ** (powers - 1)
    return _schur_stable(derivative)


def domain_contains_many(
    points: np.ndarray, n: int, resolution: int | None = None,
) -> np.ndarray:
    """沿 0 到 v 的線段追蹤 P 的符號，判定多個點是否在閉區域內。

    n ≥ 3 時區域不是星形，射線被拒的點改以特徵多項式的根是否全在
    單位圓上判定。

    Args:
        points: 形狀 (P, n) 的實座標。
        n: 秩。
        resolution: 射線步數，預設取設定值。

    Returns:
        形狀 (P,) 的布林陣列。
    """
    resolution = resolution or load_settings().ray_resolution
    points = np.atleast_2d(np.asarray(points, dtype=float))
    p_float = scalar_P(n).to_float()
    origin = float(_p_values(p_float, np.zeros((1, n)), n)[0])
    sign0 = np.sign(origin)
    tolerance = _ZERO_TOL * abs(origin)
    in_box = np.all(np.abs(points) <= 1.0 + 1e-12, axis=1)
    inside = in_box.copy()
    for step in range(1, resolution + 1):
        idx = np.flatnonzero(inside)
        if not idx.size:
            break
        values = _p_values(p_float, points[idx] * (step / resolution), n)
        zero = np.abs(values) <= tolerance
        keep = (np.sign(values) == sign0) & ~zero
        if step == resolution:
            keep |= zero
        inside[idx[~keep]] = False
    rejected = np.flatnonzero(in_box & ~inside)
    if rejected.size:
        recovered = rejected[_roots_on_circle(real_to_phi(points[rejected], n), n)]
        inside[recovered] = True
        logger.debug("射線拒絕 %d 點，根判定收回 %d 點", rejected.size, recovered.size)
    return inside


def domain_contains(v: Sequence[float], n: int, resolution: int | None = None) -> bool:
    """單點版本的 domain_contains_many。"""
    return bool(domain_contains_many(np.asarray([v], dtype=float), n, resolution)[0])


def _cell_mask(centers: np.ndarray, n: int, chunk: int) -> np.ndarray:
    mask = np.zeros(centers.shape[0], dtype=bool)
    for start in range(0, centers.shape[0], chunk):
        block = centers[start:start + chunk]
        mask[start:start + chunk] = _roots_on_circle(real_to_phi(block, n), n)
    return mask


def domain_volume_by_grid(n: int, grid: int, refine: int = _REFINE) -> float:
    """以格點計數估計 φ(A_c) 的體積。

    在 [−1,1]ⁿ 的格點中心以根判定成員，邊界附近 _BAND_LAYERS 層的格子
    再細分為 refine^n 個子格重新計數（尖邊附近的薄片在粗格點下會漏掉）。
    結果乘上 2^{⌊n/2⌋}（每對共軛座標 |dz∧dz̄| = 2dx∧dy）。
    """
    if grid < 2:
        raise ValueError("grid 必須 ≥ 2")
    if refine < 1:
        raise ValueError("refine 必須 ≥ 1")
    chunk = load_settings().grid_chunk
    step = 2.0 / grid
    axis = -1.0 + step * (np.arange(grid) + 0.5)
    shape = (grid,) * n
    mask = np.zeros(grid ** n, dtype=bool)
    for start in range(0, grid ** n, chunk):
        flat = np.arange(start, min(start + chunk, grid ** n))
        idx = np.stack(np.unravel_index(flat, shape), axis=1)
        mask[flat] = _cell_mask(axis[idx], n, chunk)
    mask = mask.reshape(shape)

    structure = ndimage.generate_binary_structure(n, n)
    edge = ndimage.binary_dilation(mask, structure) & ~ndimage.binary_erosion(mask, structure)
    band = ndimage.binary_dilation(edge, structure, iterations=_BAND_LAYERS)
    coarse = int(np.count_nonzero(mask & ~band))

    sub = step / refine
    grids = np.meshgrid(*([np.arange(refine)] * n), indexing="ij")
    offsets = np.stack([g.ravel() for g in grids], axis=1) * sub + sub / 2 - step / 2
    band_centers = axis[np.argwhere(band)]
    per_chunk = max(1, chunk // refine ** n)
    fine = 0
    for start in range(0, band_centers.shape[0], per_chunk):
        cells = band_centers[start:start + per_chunk]
        points = (cells[:, None, :] + offsets[None, :, :]).reshape(-1, n)
        fine += int(np.count_nonzero(_cell_mask(points, n, chunk)))

    volume = (coarse * step ** n + fine * sub ** n) * 2 ** (n // 2)
    logger.info(
        "格點體積：n=%d, grid=%d, 細分 %d, 粗格 %d, 細格 %d, 體積 %.6f",
        n, grid, refine, coarse, fine, volume,
    )
    return volume


def _alcove_to_angles(alcove: np.ndarray, n: int) -> np.ndarray:
    """θ = Σ_k b_k((1^k, 0, …) − k/(n+1))，回傳前 n 個角度。"""
    basis = np.array(
        [[int(j < k) - k / (n + 1) for j in range(n + 1)] for k in range(1, n + 1)]
    )
    return (alcove @ basis)[:, :n]


def domain_boundary(n: int, resolution: int) -> list[BoundaryPoint]:
    """凹室 {b_k ≥ 0, Σb_k ≤ π} 各面的重心格點在 φ 下的像。"""
    if resolution < 1:
        raise ValueError("resolution 必須 ≥ 1")
    vertices = np.vstack([np.zeros(n), pi * np.eye(n)])
    samples = []
    for facet in itertools.combinations(range(n + 1), n):
        for counts in itertools.product(range(resolution + 1), repeat=n):
            if sum(counts) != resolution:
                continue
            weights = np.asarray(counts, dtype=float) / resolution
            samples.append(weights @ vertices[list(facet)])
    alcove = np.asarray(samples)
    phi = phi_on_torus(_alcove_to_angles(alcove, n), n)
    coords = phi_to_real(phi, n)
    logger.debug("邊界取樣：n=%d，%d 點", n, len(samples))
    return [
        BoundaryPoint(tuple(map(float, b)), tuple(map(float, c)))
        for b, c in zip(alcove, coords)
    ]
