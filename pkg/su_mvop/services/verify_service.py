"""驗證套件。

每項檢查回傳一列 CheckResult；計算中拋出的 MvopError 與
ValueError 記為失敗並保留訊息。
"""

import logging
from collections.abc import Callable
from math import factorial

import numpy as np

from su_mvop.errors import MvopError
from su_mvop.models.laurent import LaurentPoly
from su_mvop.models.phipoly import PhiPoly, graded_monomials
from su_mvop.models.reports import CheckResult, RunConfig
from su_mvop.services import reference_tables
from su_mvop.services.commutant_service import analyze, structured_checks
from su_mvop.services.family_service import (
    check_column_sums,
    check_eigenfunctions,
    check_invertible_leading,
    check_norm_law,
    check_orthogonality,
    generate,
)
from su_mvop.services.laurent_calculus import evaluate, random_torus_points
from su_mvop.services.operator_service import (
    apply,
    build_operators,
    derive_first_order_data,
    derive_upsilon,
    eigenvalue_diagonal,
    second_order_symbol,
)
from su_mvop.services.quadrature_service import integrate, integrate_exact
from su_mvop.services.spherical_service import (
    barycenter_point,
    check_vandermonde,
    compositions,
    det_psi0,
    det_psi0_closed_form,
    flip_matrix,
    phi_on_torus,
    zonal_phi,
)
from su_mvop.services.symmetric_functions import (
    check_euler_identity,
    check_reduce_difference,
    check_telescoping,
    substitute,
)
from su_mvop.services.weight_service import (
    build_weight_spec,
    delta_laurent,
    domain_contains,
    domain_volume_by_grid,
    measure_constants,
    scalar_P,
    selberg_integral,
    weight_on_torus,
    weight_on_torus_laurent,
    weight_polynomial,
)

logger = logging.getLogger(__name__)

# 體積格點計數的每軸格數與相對容差
_VOLUME_GRID = {1: 2000, 2: 400, 3: 160}
_VOLUME_TOL = 1e-3
# 浮點積分的相對容差
_SELBERG_TOL = 1e-10
# 數值權重恆等式的取樣點數與容差
_WEIGHT_SAMPLES = 200
_WEIGHT_TOL = 1e-10
# 族的正交性（相對）、範數與特徵函數容差
_ORTHOGONALITY_TOL = 1e-10
_NORM_TOL = 1e-8
_EIGEN_TOL = 1e-9
_BARYCENTER_TOL = 1e-12
# Vandermonde 和檢查的最大 k
_VANDERMONDE_MAX_K = 4


def _guard(name: str, anchor: str, body: Callable[[], tuple[bool, str]]) -> CheckResult:
    try:
        passed, detail = body()
    except (MvopError, ValueError) as exc:
        logger.exception("檢查 %s 發生錯誤", name)
        return CheckResult(name, anchor, False, f"{type(exc).__name__}: {exc}")
    if not passed:
        logger.warning("檢查 %s 失敗：%s", name, detail)
    return CheckResult(name, anchor, passed, detail)


# ---- 測度 ----


def check_selberg(n: int, cap: int | None = None) -> CheckResult:
    """∫|δ| = (n+1)!：常數項抽取、浮點格點與 Γ 函數商。"""

    def _body() -> tuple[bool, str]:
        expected = factorial(n + 1)
        one = LaurentPoly.constant(1, n)
        exact = integrate_exact(one, with_delta=True)
        numeric = integrate(one, with_delta=True, cap=cap).real
        gamma = selberg_integral(n, 1.0)
        error = max(abs(numeric - expected), abs(gamma - expected)) / expected
        return exact == expected and error < _SELBERG_TOL, f"exact={exact}, rel={error:.2e}"

    return _guard(f"selberg[n={n}]", "Selberg 積分 s=1", _body)


def check_volume(n: int, grid: int | None = None) -> CheckResult:
    """φ(A_c) 體積：公式值與格點計數。"""

    def _body() -> tuple[bool, str]:
        volume = measure_constants(n).volume
        counted = domain_volume_by_grid(n, grid or _VOLUME_GRID[n])
        error = abs(counted - volume) / volume
        return error < _VOLUME_TOL, f"formula={volume:.6f}, grid={counted:.6f}, rel={error:.2e}"

    return _guard(f"volume[n={n}]", "正交區域體積", _body)


def check_barycenter(n: int) -> CheckResult:
    """凹室重心映到 φ = 0，且原點在區域內。"""

    def _body() -> tuple[bool, str]:
        point = barycenter_point(n)
        value = max(abs(evaluate(zonal_phi(i, n), point)) for i in range(1, n + 1))
        inside = domain_contains(np.zeros(n), n)
        return value < _BARYCENTER_TOL and inside, f"|φ(t0)|={value:.1e}"

    return _guard(f"barycenter[n={n}]", "重心映到原點", _body)


def check_det_psi0(n: int) -> CheckResult:

    def _body() -> tuple[bool, str]:
        return det_psi0(n) == det_psi0_closed_form(n), "精確比較"

    return _guard(f"det_psi0[n={n}]", "det Ψ₀ 交錯公式", _body)


# ---- 權重 ----


def check_weight_identity(n: int, seed: int = 0) -> CheckResult:
    """Ψ₀*Ψ₀ = W_pol(φ)：n ≤ 3 精確比較，其餘在隨機環面點上比較。

    另檢查翻轉對稱 J·W_polᵗ·J = W_pol。
    """

    def _body() -> tuple[bool, str]:
        w_pol = weight_polynomial(n, 1)
        flip = flip_matrix(n + 1)
        flipped = w_pol.transpose().left_multiply(flip).right_multiply(flip) == w_pol
        if n <= 3:
            exact = substitute(w_pol) == weight_on_torus_laurent(n, 1)
            return exact and flipped, f"精確比較, 翻轉對稱={flipped}"
        angles = random_torus_points(n, _WEIGHT_SAMPLES, seed)
        lhs = weight_on_torus(n, 1, angles)
        rhs = w_pol.to_float().evaluate(phi_on_torus(angles, n))
        error = float(np.max(np.abs(lhs - rhs)) / np.max(np.abs(lhs)))
        return (
            error < _WEIGHT_TOL and flipped,
            f"{_WEIGHT_SAMPLES} 點, rel={error:.2e}, 翻轉對稱={flipped}",
        )

    return _guard(f"weight_identity[n={n}]", "W_pol 封閉公式", _body)


def check_scalar_density(n: int) -> CheckResult:
    """P(φ(a)) = δ(a)，n ∈ {2, 3} 時另與參考多項式比較。"""

    def _body() -> tuple[bool, str]:
        p = scalar_P(n)
        matches_delta = substitute(p)[0, 0] == delta_laurent(n)
        if n in reference_tables.SUPPORTED_RANKS:
            return matches_delta and p == reference_tables.scalar_p_table(n), "精確比較含參考表"
        return matches_delta, "精確比較"

    return _guard(f"scalar_density[n={n}]", "純量權重 P", _body)


# ---- 算子 ----


def check_operator_tables(n: int, max_degree: int) -> CheckResult:
    """G_{kℓ}、L_k、C_k、Υ_ℓ 與 Γ± 對照參考表。"""

    def _body() -> tuple[bool, str]:
        mismatches = []
        if second_order_symbol(n) != reference_tables.symbol_table(n):
            mismatches.append("G")
        table = reference_tables.first_order_table(n)
        for k, (linear, constant) in derive_first_order_data(n).items():
            ref_linear, ref_constant = table[k]
            if linear != ref_linear or not np.all(constant == ref_constant):
                mismatches.append(f"L/C_{k}")
        upsilon = reference_tables.upsilon_table(n)
        for ell, poly in derive_upsilon(n).items():
            if poly != upsilon[ell]:
                mismatches.append(f"Υ_{ell}")
        if weight_polynomial(n, 1) != reference_tables.weight_table(n):
            mismatches.append("W")
        for d in graded_monomials(n, max_degree):
            if eigenvalue_diagonal(n, 1, d, 1) != reference_tables.gamma_plus_table(n, d):
                mismatches.append(f"Γ⁺{d}")
            if eigenvalue_diagonal(n, 1, d, -1) != reference_tables.gamma_minus_table(n, d):
                mismatches.append(f"Γ⁻{d}")
        return not mismatches, ", ".join(mismatches) or "全部相符"

    return _guard(f"operator_tables[n={n}]", "算子係數表", _body)


def check_commutation(n: int, k: int, max_degree: int) -> CheckResult:
    """D_plus D_minus = D_minus D_plus 於次數 ≤ max_degree 的單項式上精確成立。"""

    def _body() -> tuple[bool, str]:
        d_plus, d_minus = build_operators(n, k, max_degree)
        size = d_plus.size
        eye = PhiPoly.identity(size, n).coefficient((0,) * n)
        failed = []
        for mono in graded_monomials(n, max_degree):
            q = PhiPoly(n, (size, size), {mono: eye})
            if apply(d_plus, apply(d_minus, q)) != apply(d_minus, apply(d_plus, q)):
                failed.append(mono)
        return not failed, f"失敗單項式 {failed}" if failed else "精確交換"

    return _guard(f"commutation[n={n},k={k}]", "D_plus 與 D_minus 交換", _body)


# ---- 族 ----


def family_checks(n: int, k: int, max_degree: int, cap: int | None = None) -> list[CheckResult]:
    """生成族後檢查正交性、範數、行和、特徵函數與首項可逆性。"""
    anchor = "H_d = dim(V_μ)²/dim(V_λ)"
    try:
        family = generate(n, k, max_degree, cap)
    except (MvopError, ValueError) as exc:
        logger.exception("族生成失敗")
        return [CheckResult(f"generate[n={n},k={k}]", anchor, False, str(exc))]
    scale = max(float(np.max(np.abs(e.h))) for e in family.entries.values())
    results = [
        _guard(
            f"orthogonality[n={n},k={k}]", "Q_d 兩兩正交",
            lambda: _below(check_orthogonality(family) / scale, _ORTHOGONALITY_TOL),
        ),
    ]
    if family.labeled:
        results.append(_guard(
            f"norm_law[n={n},k={k}]", anchor,
            lambda: _below(check_norm_law(family), _NORM_TOL),
        ))
        results.append(_guard(
            f"column_sums[n={n},k={k}]", "Q_d(1) 行和為 1",
            lambda: _below(check_column_sums(family), _EIGEN_TOL),
        ))
        results.append(_guard(
            f"eigenfunctions[n={n},k={k}]", "Q_d 為 D± 的特徵函數",
            lambda: _below(check_eigenfunctions(family), _EIGEN_TOL),
        ))
    if max_degree >= 1:
        results.append(_guard(
            f"leading[n={n},k={k}]", "三項遞迴首項可逆",
            lambda: (check_invertible_leading(family), "堆疊 A⁰ 秩檢查"),
        ))
    return results


def _below(value: float, tol: float) -> tuple[bool, str]:
    return value < tol, f"{value:.2e} < {tol:.0e}"


# ---- 交換子 ----


def _expected_commutant(n: int, k: int) -> int | None:
    if k == 0:
        return 1
    if k == 1:
        return 2 if n == 1 else 1
    return None


def check_commutant(n: int, k: int, seed: int = 0) -> CheckResult:
    """取樣計算 dim A_W 並與預期值比較。"""

    def _body() -> tuple[bool, str]:
        report = analyze(build_weight_spec(n, k), seed=seed)
        expected = _expected_commutant(n, k)
        passed = report.hermitian_match and report.star_invariant
        if expected is not None:
            passed = passed and report.dim_aw == expected
        return passed, (
            f"dim A_W={report.dim_aw}, dim 𝒜_W={report.dim_script_aw}, "
            f"{report.verdict.value}"
        )

    return _guard(f"commutant[n={n},k={k}]", "交換子代數平凡", _body)


def check_structured(n: int) -> CheckResult:

    def _body() -> tuple[bool, str]:
        return structured_checks(n), "係數消去論證"

    return _guard(f"structured[n={n}]", "交換子代數平凡", _body)


# ---- 對稱函數 ----


def check_symmetric_functions(n: int) -> CheckResult:
    """伸縮、差分、Euler 恆等式（自由變數，精確）。

    伸縮恆等式對 [a, b] 可加，因此檢查每個單項 a = b = r 與完整區間 (0, N)。
    """

    def _body() -> tuple[bool, str]:
        failed = []
        for big_n in range(2 * n + 3):
            for a, b in [(r, r) for r in range(big_n + 1)] + [(0, big_n)]:
                if not check_telescoping(big_n, a, b, n):
                    failed.append(f"telescoping(N={big_n},a={a},b={b})")
        if not check_reduce_difference(n):
            failed.append("reduce_difference")
        if not check_euler_identity(n):
            failed.append("euler")
        return not failed, ", ".join(failed) or "全部成立"

    return _guard(f"symmetric_functions[n={n}]", "對稱函數恆等式", _body)


def check_vandermonde_sums(n: int, max_k: int = _VANDERMONDE_MAX_K) -> CheckResult:

    def _body() -> tuple[bool, str]:
        count = 0
        for k in range(max_k + 1):
            comps = compositions(k, n)
            for tau in comps:
                for rho in comps:
                    if not check_vandermonde(tau, rho):
                        return False, f"τ={tau}, ρ={rho}"
                    count += 1
        return True, f"{count} 組"

    return _guard(f"vandermonde[n={n}]", "廣義 Vandermonde 和", _body)


# ---- 套件 ----


def rank_checks(config: RunConfig) -> list[CheckResult]:
    """依 (n, k, max_degree) 執行的檢查。"""
    n, k = config.n, config.k
    cap = config.grid_cap
    results = [
        check_selberg(n, cap),
        check_volume(n),
        check_barycenter(n),
        check_det_psi0(n),
        check_scalar_density(n),
        check_symmetric_functions(n),
        check_vandermonde_sums(n),
    ]
    if k == 1:
        results.append(check_weight_identity(n, config.seed))
        if n in reference_tables.SUPPORTED_RANKS:
            results.append(check_operator_tables(n, config.max_degree))
        if n >= 2:
            results.append(check_structured(n))
    if k in (0, 1):
        results.append(check_commutation(n, k, config.max_degree))
    if k <= 2:
        results.extend(family_checks(n, k, config.max_degree, cap))
    results.append(check_commutant(n, k, config.seed))
    return results


def extended_checks(seed: int = 0) -> list[CheckResult]:
    """與輸入秩無關的較高秩檢查（n = 4, 5）。"""
    return [
        check_weight_identity(4, seed),
        check_weight_identity(5, seed),
        check_structured(4),
        check_barycenter(4),
        check_det_psi0(4),
        check_symmetric_functions(4),
    ]


def run_verification(config: RunConfig) -> list[CheckResult]:
    """完整驗證套件。"""
    logger.info("開始驗證：n=%d, k=%d, max_degree=%d", config.n, config.k, config.max_degree)
    results = rank_checks(config) + extended_checks(config.seed)
    failed = sum(not r.passed for r in results)
    logger.info("驗證完成：%d 項，失敗 %d 項", len(results), failed)
    return results
