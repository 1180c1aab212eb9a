"""球函數與表示論資料。

提供 zonal 球函數 φ_i、矩陣 Ψ₀ 與其對稱冪、組合矩陣列舉、
底層集合 B(kω_1)，以及 Weyl 維度與 Casimir 特徵值。
"""

import itertools
import logging
from collections.abc import Iterator, Sequence
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import numpy as np

from su_mvop.errors import ConsistencyError
from su_mvop.models.laurent import LaurentPoly, MatrixLaurent, TorusPoint
from su_mvop.models.phipoly import exact_matrix
from su_mvop.models.weights import (
    BottomElement,
    CompositionMatrix,
    Partition,
    WeightPair,
    is_dominant,
    normalize_partition,
)
from su_mvop.services.symmetric_functions import e_derived, phi_in_t, to_t

logger = logging.getLogger(__name__)

Composition = tuple[int, ...]


# ---- zonal 球函數與 Ψ₀ ----


def zonal_phi(i: int, n: int) -> LaurentPoly:
    """φ_i = binom(n+1, i)⁻¹ Σ_J t²_{j_1}···t²_{j_i}。

    Raises:
        ValueError: i 不在 1..n。
    """
    if not 1 <= i <= n:
        raise ValueError(f"φ_{i} 超出範圍 1..{n}")
    return phi_in_t(i, n)


def barycenter_point(n: int) -> TorusPoint:
    """凹室重心 exp(H_0)，其 φ 像為原點。

    θ_j = π(n+2−2j)/(2(n+1))，此時 t_j² 為 n+1 個等距單位根。
    """
    return TorusPoint(
        tuple(np.pi * (n + 2 - 2 * j) / (2 * (n + 1)) for j in range(1, n + 1))
    )


def phi_on_torus(angles: np.ndarray, n: int) -> np.ndarray:
    """在環面點上計算 (φ_1, …, φ_n)，回傳形狀 (P, n) 的複數陣列。"""
    angles = np.atleast_2d(np.asarray(angles, dtype=float))
    return np.stack(
        [phi_in_t(i, n).evaluate_angles(angles) for i in range(1, n + 1)], axis=1
    )


@lru_cache(maxsize=16)
def psi0(n: int) -> MatrixLaurent:
    """(n+1)×(n+1) 矩陣 Ψ₀。

    元素 (i, m) = binom(n, m−1)⁻¹ · t_i · e_{m−1}(u 去掉 u_i)，
    其中 u = t²。在單位元上為全 1 矩陣。
    """
    if n < 1:
        raise ValueError("n 必須 ≥ 1")

    def _entry(i: int, m: int) -> LaurentPoly:
        shift = tuple(int(j == i) for j in range(n + 1))
        base = to_t(e_derived(i + 1, m, n))
        return base * LaurentPoly.monomial(shift, n) * Fraction(1, comb(n, m))

    return MatrixLaurent.from_function(n, n + 1, n + 1, _entry)


def det_psi0(n: int) -> LaurentPoly:
    """以展開計算 det Ψ₀。"""
    return psi0(n).determinant()


def det_psi0_closed_form(n: int) -> LaurentPoly:
    """c·∏_{i<j}(t_i²−t_j²)，c = ∏_{m=1}^{n+1} binom(n, m−1)⁻¹。"""
    constant = Fraction(1)
    for m in range(1, n + 2):
        constant /= comb(n, m - 1)
    result = LaurentPoly.constant(constant, n)
    for i, j in itertools.combinations(range(n + 1), 2):
        sq_i = tuple(2 * int(x == i) for x in range(n + 1))
        sq_j = tuple(2 * int(x == j) for x in range(n + 1))
        result = result * (LaurentPoly.monomial(sq_i, n) - LaurentPoly.monomial(sq_j, n))
    return result


# ---- 組合 ----


def compositions(k: int, n: int) -> list[Composition]:
    """k 的 n+1 項弱組合，依字典序遞減排列。"""
    if k < 0:
        raise ValueError("k 必須為非負整數")

    def _build(total: int, parts: int) -> Iterator[Composition]:
        if parts == 1:
            yield (total,)
            return
        for first in range(total, -1, -1):
            for rest in _build(total - first, parts - 1):
                yield (first, *rest)

    return list(_build(k, n + 1))


def multinomial(total: int, parts: Sequence[int]) -> int:
    """多項式係數 total! / ∏ parts!。"""
    if sum(parts) != total or any(p < 0 for p in parts):
        raise ValueError(f"{tuple(parts)} 不是 {total} 的組合")
    result = factorial(total)
    for part in parts:
        result //= factorial(part)
    return result


def enumerate_M(tau: Composition, rho: Composition) -> list[CompositionMatrix]:
    """所有第 p 行和為 τ_p、第 q 列和為 ρ_q 的非負整數矩陣。

    以行為單位展開，每一行依字典序遞減列舉，順序固定。

    Raises:
        ValueError: τ 與 ρ 長度或總和不一致。
    """
    tau, rho = tuple(tau), tuple(rho)
    if len(tau) != len(rho) or sum(tau) != sum(rho):
        raise ValueError(f"τ={tau} 與 ρ={rho} 的長度或總和不一致")
    if any(x < 0 for x in tau + rho):
        raise ValueError("組合不可含負數")
    size = len(tau)
    results: list[CompositionMatrix] = []

    def _columns(total: int, caps: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if len(caps) == 1:
            if total <= caps[0]:
                yield (total,)
            return
        for first in range(min(total, caps[0]), -1, -1):
            for rest in _columns(total - first, caps[1:]):
                yield (first, *rest)

    def _fill(p: int, remaining: tuple[int, ...], chosen: list[tuple[int, ...]]) -> None:
        if p == size:
            if not any(remaining):
                rows = tuple(
                    tuple(chosen[col][q] for col in range(size)) for q in range(size)
                )
                results.append(CompositionMatrix(rows))
            return
        for column in _columns(tau[p], remaining):
            _fill(
                p + 1,
                tuple(r - c for r, c in zip(remaining, column)),
                chosen + [column],
            )

    _fill(0, rho, [])
    return results


def check_vandermonde(tau: Composition, rho: Composition) -> bool:
    """Σ_{s∈M(τ,ρ)} ∏_p binom(τ_p; s^p) = binom(k; ρ)。"""
    total = 0
    for matrix in enumerate_M(tau, rho):
        term = 1
        for p, tau_p in enumerate(tau):
            term *= multinomial(tau_p, matrix.column(p))
        total += term
    return total == multinomial(sum(rho), rho)


# ---- 對稱冪 ----


def sym_power_psi0(n: int, k: int) -> MatrixLaurent:
    """Ψ₀ 在 S^k(ℂ^{n+1}) 上的作用，列以 binom(k, ρ)⁻¹ 正規化。

    元素 (ρ, τ) = binom(k,ρ)⁻¹ Σ_{s∈M(τ,ρ)} ∏_p binom(τ_p; s^p) ∏_q g_{qp}^{s^p_q}，
    列與行都以 compositions(k, n) 排列。單位元上為全 1 矩陣。

    Raises:
        ValueError: k < 1。
        ConsistencyError: 單位元上的值不是全 1。
    """
    if k < 1:
        raise ValueError("對稱冪次數 k 必須 ≥ 1")
    if k == 1:
        return psi0(n)
    g = psi0(n)
    basis = compositions(k, n)
    powers: dict[tuple[int, int, int], LaurentPoly] = {}

    def _power(q: int, p: int, s: int) -> LaurentPoly:
        key = (q, p, s)
        if key not in powers:
            powers[key] = g[q, p] ** s
        return powers[key]

    def _entry(r: int, c: int) -> LaurentPoly:
        rho, tau = basis[r], basis[c]
        total = LaurentPoly(n)
        for matrix in enumerate_M(tau, rho):
            term = LaurentPoly.constant(1, n)
            weight = 1
            for p in range(n + 1):
                column = matrix.column(p)
                weight *= multinomial(tau[p], column)
                for q, s in enumerate(column):
                    if s:
                        term = term * _power(q, p, s)
            total = total + term * weight
        entry = total * Fraction(1, multinomial(k, rho))
        if sum(entry.terms.values()) != 1:
            raise ConsistencyError(f"S^{k} Ψ₀ 在單位元的 ({r},{c}) 元素不為 1")
        return entry

    result = MatrixLaurent.from_function(n, len(basis), len(basis), _entry)
    logger.debug("S^%d Ψ₀ 完成：n=%d，大小 %d", k, n, len(basis))
    return result


def psi0_for(n: int, k: int) -> MatrixLaurent:
    """依 k 選擇 Ψ₀：k=0 為 1×1 單位矩陣，k=1 為 psi0，k≥2 為對稱冪。"""
    if k < 0:
        raise ValueError("k 必須為非負整數")
    if k == 0:
        return MatrixLaurent.identity(1, n)
    return sym_power_psi0(n, k)


def row_weights(n: int, k: int) -> tuple[int, ...]:
    """權重 Ψ*ΛΨ 中的列權重 Λ；k ≤ 1 時全為 1，否則為 binom(k; ρ)。"""
    if k <= 1:
        return (1,) * representation_dimension(n, k)
    return tuple(multinomial(k, rho) for rho in compositions(k, n))


def representation_dimension(n: int, k: int) -> int:
    """dim S^k(ℂ^{n+1}) = binom(n+k, k)。"""
    return comb(n + k, k)


def flip_matrix(size: int) -> np.ndarray:
    """反對角置換矩陣 J：e_i ↦ e_{N+1−i}。"""
    return exact_matrix(
        [[int(i + j == size - 1) for j in range(size)] for i in range(size)]
    )


# ---- 權重 ----


def fundamental_weight(i: int, n: int) -> Partition:
    """ω_i 的分割座標 (1^i, 0^{n+1−i})；ω_0 = ω_{n+1} = 0。"""
    if not 0 <= i <= n + 1:
        raise ValueError(f"ω_{i} 超出範圍 0..{n + 1}")
    return normalize_partition(tuple(int(j < i) for j in range(n + 1)))


def spherical_weight(i: int, n: int) -> WeightPair:
    """球權重 η_i = (ω_i, ω_{n+1−i})。"""
    return WeightPair(fundamental_weight(i, n), fundamental_weight(n + 1 - i, n))


def _bottom_weight(i: int, n: int) -> WeightPair:
    return WeightPair(fundamental_weight(i, n), fundamental_weight(n + 2 - i, n))


def bottom_set(n: int, k: int) -> list[tuple[Composition, WeightPair]]:
    """B(kω_1) = {Σ k_i ν_i}，ν_i = (ω_i, ω_{n+2−i})，依組合字典序遞減排列。"""
    zero = WeightPair((0,) * (n + 1), (0,) * (n + 1))
    elements = bottom_elements(n)
    result = []
    for sigma in compositions(k, n):
        weight = zero
        for element, count in zip(elements, sigma):
            if count:
                weight = weight + element.weight.scaled(count)
        result.append((sigma, weight))
    return result


def bottom_elements(n: int) -> list[BottomElement]:
    """k = 1 的底層元素 ν_1, …, ν_{n+1}。"""
    return [BottomElement(i, _bottom_weight(i, n)) for i in range(1, n + 2)]


def degree_weight(base: WeightPair, d: Sequence[int]) -> WeightPair:
    """λ = base + Σ d_j η_j。"""
    n = base.rank
    if len(d) != n or any(x < 0 for x in d):
        raise ValueError(f"多重次數 {tuple(d)} 不合法")
    weight = base
    for j, count in enumerate(d, start=1):
        if count:
            weight = weight + spherical_weight(j, n).scaled(count)
    return weight


def _sl_dimension(weight: Partition) -> Fraction:
    size = len(weight)
    result = Fraction(1)
    for i, j in itertools.combinations(range(size), 2):
        result *= Fraction(weight[i] - weight[j] + j - i, j - i)
    return result


def weyl_dim(weight: WeightPair) -> int:
    """兩個 SL(n+1) 因子 Weyl 維度的乘積。"""
    value = _sl_dimension(weight.left) * _sl_dimension(weight.right)
    if value.denominator != 1:
        raise ConsistencyError(f"Weyl 維度 {value} 不是整數")
    return int(value)


def _sl_casimir(weight: Partition) -> Fraction:
    if not is_dominant(weight):
        raise ValueError(f"{weight} 不是支配權重")
    size = len(weight)
    mean = Fraction(sum(weight), size)
    total = Fraction(0)
    for j, value in enumerate(weight, start=1):
        traceless = value - mean
        rho = Fraction(size + 1 - 2 * j, 2)
        total += traceless * (traceless + 2 * rho)
    return total


def casimir_eigenvalue(weight: WeightPair, sign: int = 1) -> Fraction:
    """γ(λ_L) ± γ(λ_R)，γ(λ) = ⟨λ, λ+2ρ⟩（跡形式）。

    Args:
        weight: 權重對。
        sign: +1 取和，−1 取差。
    """
    if sign not in (1, -1):
        raise ValueError("sign 必須為 +1 或 −1")
    return _sl_casimir(weight.left) + sign * _sl_casimir(weight.right)


def expected_norm(n: int, k: int, sigma: Composition, d: Sequence[int]) -> Fraction:
    """H_d 的對角元素 dim(V_μ)² / weyl_dim(ν_σ + Σ d_j η_j)。"""
    weights = dict(bottom_set(n, k))
    if tuple(sigma) not in weights:
        raise ValueError(f"{tuple(sigma)} 不在 B({k}ω_1) 中")
    dim = representation_dimension(n, k)
    return Fraction(dim * dim, weyl_dim(degree_weight(weights[tuple(sigma)], d)))
