"""矩陣微分算子 D_plus 與 D_minus。

由 Casimir 算子的徑向部分在共軛後得到的資料（G_{kℓ}、L_k、C_k、Υ_ℓ）
以精確擬設求解，特徵值由 Casimir 特徵值給出，作用在 Q_d 的右側。
"""

import logging
from collections.abc import Sequence
from fractions import Fraction
from functools import lru_cache

import numpy as np
import sympy

from su_mvop.errors import ConsistencyError, FitError
from su_mvop.models.laurent import LaurentPoly, MatrixLaurent
from su_mvop.models.operators import DiffOperator, MultiIndex
from su_mvop.models.phipoly import PhiPoly, exact_matrix, exact_zeros, graded_monomials
from su_mvop.services.laurent_calculus import (
    contracted_derivative,
    derive_along,
    gradient_contract,
    simple_basis,
)
from su_mvop.services.spherical_service import (
    bottom_set,
    casimir_eigenvalue,
    degree_weight,
    psi0,
    spherical_weight,
)
from su_mvop.services.symmetric_functions import express_in_phi, phi_in_t, substitute

logger = logging.getLogger(__name__)

# 特徵值表預設涵蓋的最大總次數
_TABLE_DEGREE = 4


# ---- 二階符號 ----


@lru_cache(maxsize=8)
def second_order_symbol(n: int) -> dict[tuple[int, int], PhiPoly]:
    """G_{kℓ} = express_in_phi(gradient_contract(φ_k, φ_ℓ))，回傳 k ≤ ℓ 的項。"""
    if n < 1:
        raise ValueError("n 必須 ≥ 1")
    symbol = {}
    for k in range(1, n + 1):
        for ell in range(k, n + 1):
            symbol[(k, ell)] = express_in_phi(
                gradient_contract(phi_in_t(k, n), phi_in_t(ell, n))
            )
    return symbol


# ---- 一次式擬設 ----


def _fit_degree_one(psi: MatrixLaurent, rhs: MatrixLaurent, n: int) -> list[np.ndarray]:
    """求 A_0..A_n 使 Ψ·Σ_i φ_i A_i = rhs（φ_0 = 1）。

    每一行各自建立精確線性系統：未知數為 A_i 的該行，方程為兩側
    Laurent 係數相等。

    Raises:
        FitError: 系統無解或解不唯一。
    """
    size = psi.shape[0]
    factors = [LaurentPoly.constant(1, n)] + [phi_in_t(i, n) for i in range(1, n + 1)]
    products = {
        (a, r, i): psi[a, r] * factors[i]
        for a in range(size) for r in range(size) for i in range(n + 1)
    }
    unknowns = [(i, r) for i in range(n + 1) for r in range(size)]
    result = [exact_zeros((size, size)) for _ in range(n + 1)]
    for col in range(size):
        rows, values = [], []
        for a in range(size):
            exponents = set(rhs[a, col].terms)
            for i, r in unknowns:
                exponents.update(products[(a, r, i)].terms)
            for exp in sorted(exponents):
                rows.append([
                    products[(a, r, i)].terms.get(exp, Fraction(0)) for i, r in unknowns
                ])
                values.append(rhs[a, col].terms.get(exp, Fraction(0)))
        system = sympy.Matrix(rows)
        target = sympy.Matrix(values)
        try:
            solution, params = system.gauss_jordan_solve(target)
        except ValueError as exc:
            raise FitError(f"第 {col} 行的擬設系統無解") from exc
        if params.shape[0]:
            raise FitError(f"第 {col} 行的擬設系統解不唯一")
        for (i, r), value in zip(unknowns, solution):
            result[i][r, col] = Fraction(int(value.p), int(value.q))
    return result


def _assemble(coefs: list[np.ndarray], n: int) -> tuple[PhiPoly, np.ndarray]:
    """由 A_0..A_n 組成 (Σ_{i≥1} φ_i A_i, A_0)。"""
    size = coefs[0].shape[0]
    linear = PhiPoly.zero(n, (size, size))
    for i in range(1, n + 1):
        mono = tuple(int(j == i - 1) for j in range(n))
        linear = linear + PhiPoly(n, (size, size), {mono: coefs[i]})
    return linear, coefs[0]


def _check_identity(psi: MatrixLaurent, fitted: PhiPoly, rhs: MatrixLaurent) -> None:
    if psi @ substitute(fitted) != rhs:
        raise ConsistencyError("擬設解不滿足定義恆等式")


def _first_order_rhs(n: int, k: int) -> MatrixLaurent:
    # 2 Σ_j (∂_{X_j} Ψ) w_j，w_j = Σ_l (B⁻¹)_{jl} ∂_{X_l} φ_k
    psi = psi0(n)
    basis = simple_basis(n)
    contracted = contracted_derivative(phi_in_t(k, n), basis)
    size = psi.shape[0]

    def _entry(a: int, c: int) -> LaurentPoly:
        total = LaurentPoly(n)
        for x, w in zip(basis, contracted):
            if not w.is_zero():
                total = total + derive_along(psi[a, c], x) * w
        return total * 2

    return MatrixLaurent.from_function(n, size, size, _entry)


def _upsilon_rhs(n: int, ell: int) -> MatrixLaurent:
    # Σ_j diag(X_j) Ψ w_j
    psi = psi0(n)
    basis = simple_basis(n)
    contracted = contracted_derivative(phi_in_t(ell, n), basis)
    size = psi.shape[0]

    def _entry(a: int, c: int) -> LaurentPoly:
        total = LaurentPoly(n)
        for x, w in zip(basis, contracted):
            if x[a] and not w.is_zero():
                total = total + w * x[a]
        return psi[a, c] * total

    return MatrixLaurent.from_function(n, size, size, _entry)


@lru_cache(maxsize=8)
def derive_first_order_data(n: int) -> dict[int, tuple[PhiPoly, np.ndarray]]:
    """k → (L_k, C_k)，滿足 Ψ₀(L_k + C_k) = 2Σ(∂Ψ₀)(∂φ_k)。"""
    psi = psi0(n)
    data = {}
    for k in range(1, n + 1):
        rhs = _first_order_rhs(n, k)
        linear, constant = _assemble(_fit_degree_one(psi, rhs, n), n)
        _check_identity(psi, linear + PhiPoly.constant(constant, n), rhs)
        data[k] = (linear, constant)
    logger.info("一階資料 L_k, C_k 完成：n=%d", n)
    return data


@lru_cache(maxsize=8)
def derive_upsilon(n: int) -> dict[int, PhiPoly]:
    """ℓ → Υ_ℓ，滿足 Ψ₀Υ_ℓ = Σ_j π(X_j)Ψ₀ w_j。"""
    psi = psi0(n)
    data = {}
    for ell in range(1, n + 1):
        rhs = _upsilon_rhs(n, ell)
        linear, constant = _assemble(_fit_degree_one(psi, rhs, n), n)
        upsilon = linear + PhiPoly.constant(constant, n)
        _check_identity(psi, upsilon, rhs)
        data[ell] = upsilon
    logger.info("Υ_ℓ 完成：n=%d", n)
    return data


# ---- 特徵值 ----


def eigenvalue_diagonal(n: int, k: int, d: Sequence[int], sign: int) -> tuple[Fraction, ...]:
    """Γ±_d 的對角元素，依 bottom_set 排列。"""
    return tuple(
        casimir_eigenvalue(degree_weight(weight, d), sign)
        for _, weight in bottom_set(n, k)
    )


def spherical_casimir(n: int) -> tuple[Fraction, ...]:
    """γ_k = γ(ω_k) + γ(ω_{n+1−k})，k = 1..n。"""
    return tuple(casimir_eigenvalue(spherical_weight(k, n), 1) for k in range(1, n + 1))


def _eigen_table(n: int, k: int, sign: int, max_degree: int) -> dict:
    return {
        d: eigenvalue_diagonal(n, k, d, sign) for d in graded_monomials(n, max_degree)
    }


def _unit(n: int, *indices: int) -> MultiIndex:
    alpha = [0] * n
    for i in indices:
        alpha[i - 1] += 1
    return tuple(alpha)


def _diag(values: Sequence[Fraction]) -> np.ndarray:
    return exact_matrix(
        [[values[i] if i == j else 0 for j in range(len(values))] for i in range(len(values))]
    )


def _kron_identity(poly: PhiPoly, size: int) -> PhiPoly:
    # 1×1 純量多項式乘上 N×N 單位矩陣
    eye = exact_matrix([[int(i == j) for j in range(size)] for i in range(size)])
    return PhiPoly(poly.nvars, (size, size), {m: c[0, 0] * eye for m, c in poly.terms.items()})


def build_operators(
    n: int, k: int = 1, max_degree: int = _TABLE_DEGREE,
) -> tuple[DiffOperator, DiffOperator]:
    """建立 (D_plus, D_minus)。

    D_plus = ½ Σ G_{kℓ}∂_k∂_ℓ + Σ_k (½(L_k+C_k) + γ_kφ_k)∂_k + Γ₀
    D_minus = Σ Υ_ℓ∂_ℓ + (Γ_{L,0} − Γ_{R,0})

    k = 0 時為純量算子（L = C = Υ = 0，Γ₀ = 0）。

    Args:
        n: 秩。
        k: 0 或 1。
        max_degree: 特徵值表涵蓋的最大總次數。

    Raises:
        ValueError: k 不是 0 或 1。
    """
    if k not in (0, 1):
        raise ValueError("微分算子只支援 k = 0 或 1")
    size = n + 1 if k == 1 else 1
    gammas = spherical_casimir(n)
    plus: dict[MultiIndex, PhiPoly] = {}
    minus: dict[MultiIndex, PhiPoly] = {}
    for (a, b), g in second_order_symbol(n).items():
        factor = Fraction(1, 2) if a == b else Fraction(1)
        plus[_unit(n, a, b)] = _kron_identity(g.scale(factor), size)
    first = derive_first_order_data(n) if k == 1 else {}
    upsilon = derive_upsilon(n) if k == 1 else {}
    for j in range(1, n + 1):
        chain = _kron_identity(PhiPoly.variable(j, n).scale(gammas[j - 1]), size)
        if j in first:
            linear, constant = first[j]
            chain = chain + (linear + PhiPoly.constant(constant, n)).scale(Fraction(1, 2))
            minus[_unit(n, j)] = upsilon[j]
        plus[_unit(n, j)] = chain
    zero = _unit(n)
    plus[zero] = PhiPoly.constant(_diag(eigenvalue_diagonal(n, k, zero, 1)), n)
    minus[zero] = PhiPoly.constant(_diag(eigenvalue_diagonal(n, k, zero, -1)), n)
    d_plus = DiffOperator(
        n, size, plus, _eigen_table(n, k, 1, max_degree), label="plus",
    )
    d_minus = DiffOperator(
        n, size, minus, _eigen_table(n, k, -1, max_degree), label="minus",
    )
    logger.info("微分算子完成：n=%d, k=%d, 階數 %d/%d", n, k, d_plus.order, d_minus.order)
    return d_plus, d_minus


def apply(operator: DiffOperator, q: PhiPoly) -> PhiPoly:
    """Σ_α P_α(φ)·∂^α Q(φ)。"""
    if q.shape[0] != operator.size:
        raise ValueError(f"Q 的列數 {q.shape[0]} 與算子大小 {operator.size} 不符")
    result = PhiPoly.zero(q.nvars, q.shape)
    if q.is_zero():
        return result
    for alpha, coef in operator.coefficients.items():
        if coef.is_zero():
            continue
        derived = q
        for i, power in enumerate(alpha, start=1):
            for _ in range(power):
                derived = derived.derivative(i)
        if not derived.is_zero():
            result = result + coef @ derived
    return result
