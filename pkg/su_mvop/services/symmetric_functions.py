"""對稱函數工具。

以平方變數 u_j = t_j²（滿足 ∏u_j = 1）的 Laurent 多項式表示對稱
函數，並提供 Newton–Girard 轉換、導出函數 e^{(i)}_p、自由變數下的
恆等式檢查，以及把 Weyl 不變多項式改寫為 φ_1,…,φ_n 多項式的功能。
"""

import itertools
import logging
from collections.abc import Sequence
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import TypeVar

import sympy

from su_mvop.errors import ParityError, SymmetryError
from su_mvop.models.laurent import Exponent, LaurentPoly, MatrixLaurent
from su_mvop.models.phipoly import Monomial, PhiPoly

logger = logging.getLogger(__name__)

T = TypeVar("T")


# ---- u 變數中的對稱函數 ----


@lru_cache(maxsize=256)
def elementary(r: int, n: int) -> LaurentPoly:
    """u 變數中的基本對稱函數 e_r。

    Args:
        r: 次數，0 ≤ r ≤ n+1。
        n: 秩。

    Returns:
        rank n 的 Laurent 多項式；e_0 = e_{n+1} = 1。

    Raises:
        ValueError: r 超出範圍。
    """
    if not 0 <= r <= n + 1:
        raise ValueError(f"e_{r} 超出範圍 0..{n + 1}")
    terms: dict[Exponent, Fraction] = {}
    for subset in itertools.combinations(range(n + 1), r):
        exp = tuple(int(j in subset) for j in range(n + 1))
        terms[exp] = Fraction(1)
    return LaurentPoly(n, terms)


def power_sum(k: int, n: int) -> LaurentPoly:
    """u 變數中的冪和 p_k = Σ u_j^k，p_0 = n+1。"""
    if k < 0:
        raise ValueError("冪和次數必須為非負整數")
    result = LaurentPoly(n)
    for j in range(n + 1):
        exp = tuple(k if i == j else 0 for i in range(n + 1))
        result = result + LaurentPoly.monomial(exp, n)
    return result


def e_derived(i: int, p: int, n: int) -> LaurentPoly:
    """e^{(i)}_p = ∂e_{p+1}/∂u_i，即去掉 u_i 後的 e_p。

    Args:
        i: 變數索引，1 ≤ i ≤ n+1。
        p: 次數，0 ≤ p ≤ n。
        n: 秩。
    """
    if not 1 <= i <= n + 1 or not 0 <= p <= n:
        raise ValueError(f"e^({i})_{p} 超出範圍")
    others = [j for j in range(n + 1) if j != i - 1]
    terms: dict[Exponent, Fraction] = {}
    for subset in itertools.combinations(others, p):
        terms[tuple(int(j in subset) for j in range(n + 1))] = Fraction(1)
    return LaurentPoly(n, terms)


def newton_girard(power_sums: Sequence[T]) -> list[T]:
    """由冪和 p_1..p_m 求基本對稱函數 e_1..e_m。

    係數環只需支援加法與有理數乘法（Fraction、LaurentPoly、sympy）。
    """
    elem: list = [1]
    for k in range(1, len(power_sums) + 1):
        total = 0
        for i in range(1, k + 1):
            term = elem[k - i] * power_sums[i - 1]
            total = total + term if i % 2 == 1 else total - term
        elem.append(total * Fraction(1, k))
    return elem[1:]


def newton_girard_inverse(elementaries: Sequence[T]) -> list[T]:
    """由基本對稱函數 e_1..e_m 求冪和 p_1..p_m。"""
    elem: list = [1, *elementaries]
    sums: list = []
    for k in range(1, len(elementaries) + 1):
        total = elem[k] * ((-1) ** (k - 1) * k)
        for i in range(1, k):
            term = elem[k - i] * sums[i - 1]
            total = total + term if (k - 1 + i) % 2 == 0 else total - term
        sums.append(total)
    return sums


# ---- t 與 u 之間的轉換 ----


def to_t(p: LaurentPoly) -> LaurentPoly:
    """將 u 變數多項式代換為 t 變數（指數加倍）。"""
    return p.map_exponents(lambda e: tuple(2 * x for x in e))


def to_u(p: LaurentPoly) -> LaurentPoly:
    """將只含偶數特徵標的 t 多項式改寫為 u 變數。

    Raises:
        ParityError: 標準指數中出現奇數分量。
    """
    terms: dict[Exponent, Fraction] = {}
    for exp, coef in p.terms.items():
        if any(x % 2 for x in exp):
            raise ParityError(f"特徵標 {exp} 無法以 u = t² 表示")
        terms[tuple(x // 2 for x in exp)] = coef
    return LaurentPoly(p.rank, terms)


@lru_cache(maxsize=64)
def phi_in_t(m: int, n: int) -> LaurentPoly:
    """φ_m = binom(n+1, m)⁻¹ e_m(t²)，作為 t 的 Laurent 多項式。"""
    return to_t(elementary(m, n)) * Fraction(1, comb(n + 1, m))


@lru_cache(maxsize=512)
def phi_monomial_in_t(mono: Monomial) -> LaurentPoly:
    """φ^mono 在環面上的 Laurent 展開。"""
    n = len(mono)
    result = LaurentPoly.constant(1, n)
    for i, power in enumerate(mono):
        if power:
            result = result * phi_in_t(i + 1, n) ** power
    return result


def substitute(q: PhiPoly) -> MatrixLaurent:
    """將 φ_m 代換為 zonal 球函數，得到環面上的 Laurent 矩陣。"""
    n = q.nvars
    rows, cols = q.shape

    def _entry(i: int, j: int) -> LaurentPoly:
        total = LaurentPoly(n)
        for mono, coef in q.terms.items():
            value = coef[i, j]
            if value:
                total = total + phi_monomial_in_t(mono) * Fraction(value)
        return total

    return MatrixLaurent.from_function(n, rows, cols, _entry)


# ---- 改寫為 φ 多項式 ----


def is_symmetric(p: LaurentPoly) -> bool:
    """是否在 n+1 個變數的所有置換下不變。"""
    size = p.rank + 1
    if size < 2:
        return True
    swap = (1, 0) + tuple(range(2, size))
    cycle = tuple((j + 1) % size for j in range(size))
    return p.permute(swap) == p and p.permute(cycle) == p


def _leading_key(exp: Exponent) -> tuple[int, tuple[int, ...]]:
    low = min(exp)
    shifted = tuple(x - low for x in exp)
    return sum(shifted), tuple(sorted(shifted, reverse=True))


@lru_cache(maxsize=1024)
def _elementary_product(powers: tuple[int, ...], n: int) -> LaurentPoly:
    """e_1^{c_1}···e_n^{c_n}（u 變數）。"""
    for j, power in enumerate(powers):
        if power:
            lowered = powers[:j] + (power - 1,) + powers[j + 1:]
            return _elementary_product(lowered, n) * elementary(j + 1, n)
    return LaurentPoly.constant(1, n)


def express_in_phi(p: LaurentPoly, *, in_u: bool = False) -> PhiPoly:
    """將 Weyl 不變的 Laurent 多項式改寫為 φ 的多項式。

    以「正規化次數、再排序分割」為鍵反覆消去首項：首項 u^λ
    對應 e_1^{c_1}···e_n^{c_n}，其中 c_j = λ_j − λ_{j+1}，每一步的首項
    嚴格遞減。最後代入 e_m = binom(n+1, m)·φ_m。

    Args:
        p: t 變數（預設）或 u 變數的 Laurent 多項式。
        in_u: p 是否已是 u 變數。

    Returns:
        1×1 精確 PhiPoly。

    Raises:
        ParityError: 含奇數特徵標。
        SymmetryError: 不具置換對稱性。
    """
    current = p if in_u else to_u(p)
    if not is_symmetric(current):
        raise SymmetryError("輸入多項式不具置換對稱性")
    n = current.rank
    e_coefs: dict[Monomial, Fraction] = {}
    steps = 0
    while not current.is_zero():
        exp, coef = max(current.terms.items(), key=lambda item: _leading_key(item[0]))
        _, partition = _leading_key(exp)
        powers = tuple(partition[j] - partition[j + 1] for j in range(n))
        current = current - _elementary_product(powers, n) * coef
        e_coefs[powers] = e_coefs.get(powers, Fraction(0)) + coef
        steps += 1
    logger.debug("express_in_phi：n=%d，消去 %d 步", n, steps)
    phi_coefs = {}
    for powers, coef in e_coefs.items():
        scale = Fraction(1)
        for j, power in enumerate(powers):
            scale *= comb(n + 1, j + 1) ** power
        phi_coefs[powers] = coef * scale
    return PhiPoly.scalar(n, phi_coefs)


# ---- 自由變數恆等式 ----


def _free_variables(n: int) -> tuple[sympy.Symbol, ...]:
    return sympy.symbols(f"u1:{n + 2}")


def _free_e(xs: Sequence[sympy.Symbol], r: int) -> sympy.Expr:
    if r < 0 or r > len(xs):
        return sympy.Integer(0)
    return sympy.Add(*[sympy.Mul(*c) for c in itertools.combinations(xs, r)])


def _free_e_derived(xs: Sequence[sympy.Symbol], i: int, p: int) -> sympy.Expr:
    return _free_e(tuple(xs[:i]) + tuple(xs[i + 1:]), p)


def check_telescoping(big_n: int, a: int, b: int, n: int) -> bool:
    """在自由變數中檢查伸縮恆等式。

    Σ_{r=a}^{b} (N−2r) e_{N−r} e_r
        = Σ_i u_i (e^{(i)}_{N−b−1} e^{(i)}_b − e^{(i)}_{N−a} e^{(i)}_{a−1})

    Args:
        big_n: N。
        a: 下限。
        b: 上限，0 ≤ a ≤ b ≤ N。
        n: 秩（n+1 個自由變數）。
    """
    if not 0 <= a <= b <= big_n:
        raise ValueError(f"需要 0 ≤ a ≤ b ≤ N，收到 a={a}, b={b}, N={big_n}")
    xs = _free_variables(n)
    lhs = sympy.Add(*[
        (big_n - 2 * r) * _free_e(xs, big_n - r) * _free_e(xs, r)
        for r in range(a, b + 1)
    ])
    rhs = sympy.Add(*[
        x * (
            _free_e_derived(xs, i, big_n - b - 1) * _free_e_derived(xs, i, b)
            - _free_e_derived(xs, i, big_n - a) * _free_e_derived(xs, i, a - 1)
        )
        for i, x in enumerate(xs)
    ])
    return sympy.expand(lhs - rhs) == 0


def check_reduce_difference(n: int) -> bool:
    """檢查 e^{(i)}_{m−1}e_k − e^{(i)}_{k−1}e_m
    = e^{(i)}_{m−1}e^{(i)}_k − e^{(i)}_{k−1}e^{(i)}_m（1 ≤ m, k ≤ n+1）。"""
    xs = _free_variables(n)
    for i in range(n + 1):
        for m in range(1, n + 2):
            for k in range(1, n + 2):
                lhs = (
                    _free_e_derived(xs, i, m - 1) * _free_e(xs, k)
                    - _free_e_derived(xs, i, k - 1) * _free_e(xs, m)
                )
                rhs = (
                    _free_e_derived(xs, i, m - 1) * _free_e_derived(xs, i, k)
                    - _free_e_derived(xs, i, k - 1) * _free_e_derived(xs, i, m)
                )
                if sympy.expand(lhs - rhs) != 0:
                    logger.warning("差分恆等式失敗：i=%d, m=%d, k=%d", i + 1, m, k)
                    return False
    return True


def check_euler_identity(n: int) -> bool:
    """檢查 r·e_r = Σ_i u_i e^{(i)}_{r−1}，r = 1..n+1。"""
    xs = _free_variables(n)
    for r in range(1, n + 2):
        rhs = sympy.Add(*[x * _free_e_derived(xs, i, r - 1) for i, x in enumerate(xs)])
        if sympy.expand(r * _free_e(xs, r) - rhs) != 0:
            logger.warning("Euler 恆等式失敗：r=%d", r)
            return False
    return True
