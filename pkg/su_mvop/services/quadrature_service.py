"""環面上的譜精確積分。

以 [0, 2π)ⁿ 的均勻格點對三角多項式取平均；格點數由被積函數的
Fourier 次數決定，超過設定上限時拋出 QuadratureError。
"""

import logging
from fractions import Fraction
from functools import lru_cache

import numpy as np

from su_mvop.config import load_settings
from su_mvop.errors import QuadratureError
from su_mvop.models.grid import GridSpec
from su_mvop.models.laurent import LaurentPoly, MatrixLaurent
from su_mvop.models.phipoly import Monomial, PhiPoly, graded_monomials
from su_mvop.models.weights import WeightSpec
from su_mvop.services.spherical_service import phi_on_torus
from su_mvop.services.symmetric_functions import phi_in_t
from su_mvop.services.weight_service import abs_delta_laurent, measure_constants

logger = logging.getLogger(__name__)


def _max_degree(poly: LaurentPoly | MatrixLaurent) -> int:
    return max(poly.fourier_degree(), default=0)


@lru_cache(maxsize=16)
def phi_degree(n: int) -> int:
    """各 φ_i 在單一角度上的最大 Fourier 次數。"""
    return max(_max_degree(phi_in_t(i, n)) for i in range(1, n + 1))


@lru_cache(maxsize=16)
def delta_degree(n: int) -> int:
    """|δ| 在單一角度上的最大 Fourier 次數。"""
    return _max_degree(abs_delta_laurent(n))


def grid_for_degree(n: int, degree: int, cap: int | None = None) -> GridSpec:
    """Fourier 次數 degree 的被積函數所需格點（M = degree + 1）。

    Raises:
        QuadratureError: degree 超過上限。
    """
    cap = load_settings().max_fourier_degree if cap is None else cap
    if degree > cap:
        raise QuadratureError(f"Fourier 次數 {degree} 超過上限 {cap}")
    return GridSpec(n, degree + 1)


def _chunks(grid: GridSpec):
    chunk = load_settings().grid_chunk
    for start in range(0, grid.total_nodes, chunk):
        yield grid.nodes(start, start + chunk)


def integrate(
    f: LaurentPoly | MatrixLaurent, with_delta: bool = False, cap: int | None = None,
) -> complex | np.ndarray:
    """∫_{A_c} f(a) [|δ(a)|] da（正規化 Haar 測度）。

    Args:
        f: Laurent 多項式或 Laurent 矩陣。
        with_delta: 是否乘上 |δ|。
        cap: Fourier 次數上限，預設取設定值。

    Returns:
        純量或矩陣。
    """
    n = f.rank
    degree = _max_degree(f) + (delta_degree(n) if with_delta else 0)
    grid = grid_for_degree(n, degree, cap)
    delta = abs_delta_laurent(n) if with_delta else None
    total = None
    for angles in _chunks(grid):
        values = f.evaluate_angles(angles)
        if delta is not None:
            weight = delta.evaluate_angles(angles).real
            values = values * weight.reshape((-1,) + (1,) * (values.ndim - 1))
        part = values.sum(axis=0)
        total = part if total is None else total + part
    result = total / grid.total_nodes
    if isinstance(f, LaurentPoly):
        return complex(result)
    return result


def integrate_exact(f: LaurentPoly, with_delta: bool = False) -> Fraction:
    """常數項抽取：∫ f [|δ|] da 的精確有理值。"""
    if with_delta:
        f = f * abs_delta_laurent(f.rank)
    return f.constant_term()


@lru_cache(maxsize=8)
def _grid_data(n: int, points_per_angle: int) -> tuple[np.ndarray, np.ndarray]:
    """格點上的 φ 值 (P, n) 與 |δ| 值 (P,)。"""
    grid = GridSpec(n, points_per_angle)
    delta = abs_delta_laurent(n)
    phis, weights = [], []
    for angles in _chunks(grid):
        phis.append(phi_on_torus(angles, n))
        weights.append(delta.evaluate_angles(angles).real)
    logger.debug("格點資料：n=%d, M=%d, 節點 %d", n, points_per_angle, grid.total_nodes)
    return np.concatenate(phis), np.concatenate(weights)


def _grid_for_phi(n: int, phi_total_degree: int, cap: int | None) -> GridSpec:
    return grid_for_degree(n, phi_total_degree * phi_degree(n) + delta_degree(n), cap)


def inner_product(
    p: PhiPoly, q: PhiPoly, spec: WeightSpec, cap: int | None = None,
) -> np.ndarray:
    """⟨P, Q⟩ = c1 ∫ P(φ(a))* W(φ(a)) Q(φ(a)) |δ(a)| da。

    Raises:
        ValueError: 形狀與權重不相容。
        QuadratureError: 格點超過上限。
    """
    size = spec.size
    if p.shape[0] != size or q.shape[0] != size:
        raise ValueError(f"多項式列數與權重大小 {size} 不符")
    n = spec.n
    c1 = float(measure_constants(n).c1)
    if p.is_zero() or q.is_zero():
        return np.zeros((p.shape[1], q.shape[1]), dtype=complex)
    degree = p.total_degree() + q.total_degree() + spec.w_pol.total_degree()
    grid = _grid_for_phi(n, degree, cap)
    phi, delta = _grid_data(n, grid.points_per_angle)
    chunk = load_settings().grid_chunk
    w_float, p_float, q_float = spec.w_pol.to_float(), p.to_float(), q.to_float()
    total = np.zeros((p.shape[1], q.shape[1]), dtype=complex)
    for start in range(0, phi.shape[0], chunk):
        points = phi[start:start + chunk]
        pv = p_float.evaluate(points)
        wv = w_float.evaluate(points)
        qv = q_float.evaluate(points)
        total += np.einsum(
            "pia,pij,pjb,p->ab", pv.conj(), wv, qv, delta[start:start + chunk]
        )
    return c1 * total / grid.total_nodes


def moment_matrix(
    spec: WeightSpec, max_degree: int, cap: int | None = None,
) -> tuple[tuple[tuple[Monomial, int], ...], np.ndarray]:
    """基底 {φ^a ε_r} 上的 Gram 矩陣。

    G[(a,r),(b,s)] = c1 ∫ conj(φ^a) φ^b W_rs |δ| da，為實對稱矩陣。

    Args:
        spec: 權重規格。
        max_degree: 單項式的最大總次數。
        cap: Fourier 次數上限。

    Returns:
        (基底, G)，基底依總次數、字典序遞減、再依行索引排列。
    """
    n, size = spec.n, spec.size
    monomials = graded_monomials(n, max_degree)
    grid = _grid_for_phi(n, 2 * max_degree + spec.w_pol.total_degree(), cap)
    phi, delta = _grid_data(n, grid.points_per_angle)
    powers = np.asarray(monomials)
    w_float = spec.w_pol.to_float()
    chunk = load_settings().grid_chunk
    gram = np.zeros((len(monomials), size, len(monomials), size), dtype=complex)
    for start in range(0, phi.shape[0], chunk):
        points = phi[start:start + chunk]
        values = np.prod(points[:, None, :] ** powers[None, :, :], axis=2)
        wv = w_float.evaluate(points)
        gram += np.einsum(
            "pa,pb,prs,p->arbs", values.conj(), values, wv,
            delta[start:start + chunk], optimize=True,
        )
    gram *= float(measure_constants(n).c1) / grid.total_nodes
    dim = len(monomials) * size
    gram = gram.reshape(dim, dim)
    logger.debug("Gram 矩陣虛部最大值 %.3e", float(np.max(np.abs(gram.imag))))
    basis = tuple((mono, r) for mono in monomials for r in range(size))
    logger.info(
        "Gram 矩陣完成：n=%d, 次數 ≤ %d, 維度 %d, M=%d",
        n, max_degree, dim, grid.points_per_angle,
    )
    return basis, gram.real.copy()
