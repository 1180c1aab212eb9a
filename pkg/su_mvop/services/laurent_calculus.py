"""環面上的不變微分與梯度縮併。

環面 Lie 代數以整數對角無跡矩陣表示，內積採用跡形式 tr(XY)。
"""

import logging
from collections.abc import Sequence
from fractions import Fraction
from functools import lru_cache

import numpy as np
import sympy

from su_mvop.models.laurent import LaurentPoly, TorusPoint

logger = logging.getLogger(__name__)

Diagonal = tuple[int, ...]


def simple_basis(n: int) -> tuple[Diagonal, ...]:
    """有理基底 X_j = E_jj − E_{j+1,j+1}，j = 1..n。"""
    return tuple(
        tuple(1 if i == j else -1 if i == j + 1 else 0 for i in range(n + 1))
        for j in range(n)
    )


def first_row_basis(n: int) -> tuple[Diagonal, ...]:
    """另一組有理基底 E_11 − E_jj，j = 2..n+1。"""
    return tuple(
        tuple(1 if i == 0 else -1 if i == j else 0 for i in range(n + 1))
        for j in range(1, n + 1)
    )


def _validate(x: Sequence[int], rank: int) -> Diagonal:
    x = tuple(int(v) for v in x)
    if len(x) != rank + 1:
        raise ValueError(f"對角矩陣長度 {len(x)} 與 rank {rank} 不符")
    if sum(x) != 0:
        raise ValueError(f"對角矩陣 {x} 不是無跡矩陣")
    return x


def derive_along(p: LaurentPoly, x: Sequence[int]) -> LaurentPoly:
    """沿無跡對角矩陣 X 的不變微分。

    每一項 c·t^e 映為 c·(Σ x_j e_j)·t^e。因 Σ x_j = 0，權重與
    指數代表元的選取無關。

    Args:
        p: Laurent 多項式。
        x: 對角元素 (x_1, …, x_{n+1})。

    Returns:
        微分後的 Laurent 多項式。

    Raises:
        ValueError: X 長度不符或不是無跡矩陣。
    """
    x = _validate(x, p.rank)
    return p.weighted(lambda e: sum(a * b for a, b in zip(x, e)))


@lru_cache(maxsize=64)
def dual_coefficients(basis: tuple[Diagonal, ...]) -> tuple[tuple[Fraction, ...], ...]:
    """跡形式 Gram 矩陣 B_{jk} = tr(X_j X_k) 的反矩陣。"""
    gram = sympy.Matrix(
        [[sum(a * b for a, b in zip(xj, xk)) for xk in basis] for xj in basis]
    )
    inverse = gram.inv()
    return tuple(
        tuple(Fraction(int(v.p), int(v.q)) for v in inverse.row(j))
        for j in range(len(basis))
    )


def gradient_contract(
    f: LaurentPoly,
    g: LaurentPoly,
    basis: tuple[Diagonal, ...] | None = None,
) -> LaurentPoly:
    """與基底無關的梯度縮併 Σ_{j,k} (B⁻¹)_{jk} ∂_{X_j}f ∂_{X_k}g。

    Args:
        f: 第一個 Laurent 多項式。
        g: 第二個 Laurent 多項式。
        basis: 環面 Lie 代數的有理基底，預設為 simple_basis。

    Returns:
        精確有理係數的 Laurent 多項式。
    """
    if f.rank != g.rank:
        raise ValueError("rank 不符")
    basis = simple_basis(f.rank) if basis is None else tuple(map(tuple, basis))
    inverse = dual_coefficients(basis)
    df = [derive_along(f, x) for x in basis]
    dg = [derive_along(g, x) for x in basis]
    total = LaurentPoly(f.rank)
    for j, row in enumerate(inverse):
        if df[j].is_zero():
            continue
        # partner = Σ_k (B⁻¹)_{jk} ∂_{X_k} g
        partner = LaurentPoly(f.rank)
        for k, coef in enumerate(row):
            if coef:
                partner = partner + dg[k] * coef
        if not partner.is_zero():
            total = total + df[j] * partner
    return total


def contracted_derivative(
    f: LaurentPoly, basis: tuple[Diagonal, ...] | None = None,
) -> list[LaurentPoly]:
    """回傳 w_j = Σ_l (B⁻¹)_{jl} ∂_{X_l} f，j 依基底排列。"""
    basis = simple_basis(f.rank) if basis is None else basis
    inverse = dual_coefficients(basis)
    derivs = [derive_along(f, x) for x in basis]
    result = []
    for row in inverse:
        acc = LaurentPoly(f.rank)
        for coef, deriv in zip(row, derivs):
            if coef:
                acc = acc + deriv * coef
        result.append(acc)
    return result


def evaluate(p: LaurentPoly, point: TorusPoint) -> complex:
    """在環面點上求值。"""
    return p.evaluate(point)


def random_torus_points(n: int, count: int, seed: int = 0) -> np.ndarray:
    """以固定種子在 [0, 2π)ⁿ 均勻取樣角度，形狀 (count, n)。"""
    rng = np.random.default_rng(seed)
    return rng.uniform(0.0, 2.0 * np.pi, size=(count, n))
