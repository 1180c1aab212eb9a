"""矩陣微分算子單元測試。"""

import unittest
from fractions import Fraction

import numpy as np

from su_mvop.models.phipoly import PhiPoly
from su_mvop.services.operator_service import (
    apply,
    build_operators,
    derive_first_order_data,
    derive_upsilon,
    eigenvalue_diagonal,
    second_order_symbol,
    spherical_casimir,
)
from su_mvop.services.reference_tables import (
    first_order_table,
    gamma_minus_table,
    gamma_plus_table,
    symbol_table,
    upsilon_table,
)


class TestSymbol(unittest.TestCase):
    """二階符號 G_{kℓ} 測試。"""

    def test_rank_one(self):
        """確認 n=1 時 G_11 = 2φ² − 2。"""
        expected = PhiPoly.scalar(1, {(2,): 2, (0,): -2})
        self.assertEqual(second_order_symbol(1)[(1, 1)], expected)

    def test_matches_table(self):
        """確認 n=2、3 的 G_{kℓ} 等於參考表。"""
        for n in (2, 3):
            derived = second_order_symbol(n)
            for key, expected in symbol_table(n).items():
                self.assertEqual(derived[key], expected, f"n={n}, {key}")

    def test_invalid_rank(self):
        """確認 n < 1 拋出 ValueError。"""
        with self.assertRaises(ValueError):
            second_order_symbol(0)


class TestFirstOrderData(unittest.TestCase):
    """L_k、C_k 與 Υ_ℓ 測試。"""

    def test_first_order_matches_table(self):
        """確認 n=2、3 的 (L_k, C_k) 等於參考表。"""
        for n in (2, 3):
            derived = derive_first_order_data(n)
            for k, (linear, constant) in first_order_table(n).items():
                self.assertEqual(derived[k][0], linear, f"n={n}, k={k}")
                self.assertTrue(np.all(derived[k][1] == constant))

    def test_upsilon_matches_table(self):
        """確認 n=2、3 的 Υ_ℓ 等於參考表。"""
        for n in (2, 3):
            derived = derive_upsilon(n)
            for ell, expected in upsilon_table(n).items():
                self.assertEqual(derived[ell], expected, f"n={n}, ℓ={ell}")


class TestEigenvalues(unittest.TestCase):
    """特徵值表測試。"""

    def test_spherical_casimir(self):
        """確認 n=2 時 γ_1 = γ_2 = 16/3。"""
        self.assertEqual(spherical_casimir(2), (Fraction(16, 3), Fraction(16, 3)))

    def test_diagonal_matches_table(self):
        """確認 Γ±_d 與參考表一致。"""
        for n in (2, 3):
            for d in ((0,) * n, (1,) + (0,) * (n - 1), (0,) * (n - 1) + (2,)):
                self.assertEqual(eigenvalue_diagonal(n, 1, d, 1), gamma_plus_table(n, d))
                self.assertEqual(eigenvalue_diagonal(n, 1, d, -1), gamma_minus_table(n, d))

    def test_first_column(self):
        """確認 n=2, d=(1,0) 的 Γ⁺ 第一個元素為 28/3。"""
        self.assertEqual(eigenvalue_diagonal(2, 1, (1, 0), 1)[0], Fraction(28, 3))


class TestBuildOperators(unittest.TestCase):
    """build_operators 與 apply 測試。"""

    def test_scalar_chebyshev(self):
        """確認 n=1, k=0 時 D_plus U_2 = 8 U_2。"""
        d_plus, d_minus = build_operators(1, 0, max_degree=2)
        u2 = PhiPoly.scalar(1, {(2,): 4, (0,): -1})
        self.assertEqual(apply(d_plus, u2), u2.scale(8))
        self.assertTrue(apply(d_minus, u2).is_zero())
        self.assertEqual(d_plus.eigenvalue_table[(2,)], (Fraction(8),))

    def test_orders_and_labels(self):
        """確認 D_plus 為二階、D_minus 為一階。"""
        d_plus, d_minus = build_operators(2, 1, max_degree=1)
        self.assertEqual((d_plus.order, d_minus.order), (2, 1))
        self.assertEqual((d_plus.label, d_minus.label), ("plus", "minus"))
        self.assertEqual(d_plus.size, 3)
        self.assertEqual(len(d_plus.eigenvalue_table), 3)

    def test_constant_term(self):
        """確認 D_plus 作用在單位矩陣上得到 Γ⁺_0。"""
        d_plus, _ = build_operators(2, 1, max_degree=0)
        image = apply(d_plus, PhiPoly.identity(3, 2))
        diagonal = [image.coefficient((0, 0))[i, i] for i in range(3)]
        self.assertEqual(tuple(diagonal), eigenvalue_diagonal(2, 1, (0, 0), 1))

    def test_commute(self):
        """確認 D_plus 與 D_minus 在 φ_1 I 上交換。"""
        d_plus, d_minus = build_operators(2, 1, max_degree=1)
        q = PhiPoly.identity(3, 2).times_monomial((1, 0))
        self.assertEqual(
            apply(d_plus, apply(d_minus, q)), apply(d_minus, apply(d_plus, q)),
        )

    def test_invalid_k(self):
        """確認 k ≥ 2 拋出 ValueError。"""
        with self.assertRaises(ValueError):
            build_operators(1, 2)

    def test_apply_shape(self):
        """確認列數不符時拋出 ValueError。"""
        d_plus, _ = build_operators(1, 1, max_degree=1)
        with self.assertRaises(ValueError):
            apply(d_plus, PhiPoly.identity(3, 1))


if __name__ == "__main__":
    unittest.main()
