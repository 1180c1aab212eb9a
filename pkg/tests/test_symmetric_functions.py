"""對稱函數工具單元測試。"""

import unittest
from fractions import Fraction

from su_mvop.errors import ParityError, SymmetryError
from su_mvop.models.laurent import LaurentPoly
from su_mvop.models.phipoly import PhiPoly
from su_mvop.services.symmetric_functions import (
    check_euler_identity,
    check_reduce_difference,
    check_telescoping,
    e_derived,
    elementary,
    express_in_phi,
    is_symmetric,
    newton_girard,
    newton_girard_inverse,
    phi_in_t,
    power_sum,
    substitute,
    to_t,
    to_u,
)


class TestElementary(unittest.TestCase):
    """基本對稱函數與冪和測試。"""

    def test_boundary_degrees(self):
        """確認 e_0 = e_{n+1} = 1。"""
        self.assertEqual(elementary(0, 2), LaurentPoly.constant(1, 2))
        self.assertEqual(elementary(3, 2), LaurentPoly.constant(1, 2))

    def test_out_of_range(self):
        """確認 r > n+1 拋出 ValueError。"""
        with self.assertRaises(ValueError):
            elementary(3, 1)

    def test_power_sum_zero(self):
        """確認 p_0 = n+1。"""
        self.assertEqual(power_sum(0, 3), LaurentPoly.constant(4, 3))

    def test_e_derived(self):
        """確認 e^{(1)}_1 在 n=1 時為 u_2。"""
        self.assertEqual(e_derived(1, 1, 1), LaurentPoly.monomial((0, 1), 1))
        with self.assertRaises(ValueError):
            e_derived(3, 0, 1)


class TestNewtonGirard(unittest.TestCase):
    """Newton–Girard 轉換測試。"""

    def test_numeric(self):
        """確認 {1,2,3} 的冪和 [6,14,36] 對應 e = [6,11,6]。"""
        sums = [Fraction(6), Fraction(14), Fraction(36)]
        self.assertEqual(newton_girard(sums), [6, 11, 6])
        self.assertEqual(newton_girard_inverse([6, 11, 6]), [6, 14, 36])

    def test_laurent(self):
        """確認在 Laurent 多項式上由冪和得到 e_r。"""
        n = 2
        sums = [power_sum(k, n) for k in range(1, n + 2)]
        result = newton_girard(sums)
        for r, value in enumerate(result, start=1):
            self.assertEqual(value, elementary(r, n))

    def test_laurent_inverse(self):
        """確認由 e_r 得到冪和。"""
        n = 2
        elems = [elementary(r, n) for r in range(1, n + 2)]
        for k, value in enumerate(newton_girard_inverse(elems), start=1):
            self.assertEqual(value, power_sum(k, n))


class TestParity(unittest.TestCase):
    """t 與 u 之間的轉換測試。"""

    def test_round_trip(self):
        """確認 to_u(to_t(p)) = p。"""
        p = elementary(1, 2) * elementary(2, 2)
        self.assertEqual(to_u(to_t(p)), p)

    def test_odd_character(self):
        """確認奇數特徵標拋出 ParityError。"""
        with self.assertRaises(ParityError):
            to_u(LaurentPoly.monomial((1, 0), 1))


class TestExpressInPhi(unittest.TestCase):
    """express_in_phi 測試。"""

    def test_phi_variables(self):
        """確認 φ_i 本身改寫為變數 φ_i。"""
        for n in (1, 2, 3):
            for i in range(1, n + 1):
                self.assertEqual(express_in_phi(phi_in_t(i, n)), PhiPoly.variable(i, n))

    def test_product(self):
        """確認 φ_1φ_2 − 1/3 的改寫。"""
        p = phi_in_t(1, 2) * phi_in_t(2, 2) - Fraction(1, 3)
        expected = PhiPoly.scalar(2, {(1, 1): 1, (0, 0): Fraction(-1, 3)})
        self.assertEqual(express_in_phi(p), expected)

    def test_power_sum_n1(self):
        """確認 n=1 時 u_1² + u_2² = 4φ_1² − 2。"""
        expected = PhiPoly.scalar(1, {(2,): 4, (0,): -2})
        self.assertEqual(express_in_phi(power_sum(2, 1), in_u=True), expected)

    def test_substitute_inverse(self):
        """確認 substitute 與 express_in_phi 互逆。"""
        p = phi_in_t(1, 3) ** 2 * phi_in_t(3, 3) + phi_in_t(2, 3)
        self.assertEqual(substitute(express_in_phi(p))[0, 0], p)

    def test_not_symmetric(self):
        """確認不對稱輸入拋出 SymmetryError。"""
        with self.assertRaises(SymmetryError):
            express_in_phi(LaurentPoly.monomial((2, 0), 1))

    def test_is_symmetric(self):
        """確認置換對稱判定。"""
        self.assertTrue(is_symmetric(power_sum(2, 3)))
        self.assertFalse(is_symmetric(LaurentPoly.monomial((1, 0, 0), 2)))


class TestIdentities(unittest.TestCase):
    """自由變數恆等式測試。"""

    def test_telescoping(self):
        """確認伸縮恆等式在完整與單項範圍成立。"""
        self.assertTrue(check_telescoping(4, 0, 4, 2))
        self.assertTrue(check_telescoping(3, 1, 1, 2))
        self.assertTrue(check_telescoping(5, 2, 3, 3))

    def test_telescoping_invalid(self):
        """確認 a > b 拋出 ValueError。"""
        with self.assertRaises(ValueError):
            check_telescoping(3, 2, 1, 2)

    def test_reduce_difference(self):
        """確認差分恆等式。"""
        self.assertTrue(check_reduce_difference(2))

    def test_euler(self):
        """確認 r·e_r = Σ u_i e^{(i)}_{r−1}。"""
        self.assertTrue(check_euler_identity(3))


if __name__ == "__main__":
    unittest.main()
