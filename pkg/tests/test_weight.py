"""矩陣權重、純量密度與區域單元測試。"""

import unittest
from fractions import Fraction
from math import pi

import numpy as np

from su_mvop.models.phipoly import PhiPoly, exact_matrix
from su_mvop.services.laurent_calculus import random_torus_points
from su_mvop.services.spherical_service import flip_matrix, phi_on_torus
from su_mvop.services.symmetric_functions import substitute
from su_mvop.services.weight_service import (
    build_weight_spec,
    coefficient_matrices,
    delta_laurent,
    domain_boundary,
    domain_contains,
    domain_contains_many,
    domain_volume_by_grid,
    interior_sign,
    linear_coefficient,
    measure_constants,
    pair_coefficient,
    phi_to_real,
    real_to_phi,
    scalar_P,
    selberg_integral,
    weight_closed_form,
    weight_from_psi,
    weight_on_torus,
    weight_polynomial,
)


class TestWeightPolynomial(unittest.TestCase):
    """W_pol 建構測試。"""

    def test_closed_form_n1(self):
        """確認 n=1 時 W = 2[[1, φ], [φ, 1]]。"""
        phi = PhiPoly.variable(1, 1)
        one = PhiPoly.identity(1, 1)
        expected = PhiPoly.from_entries(1, [[one, phi], [phi, one]]).scale(2)
        self.assertEqual(weight_closed_form(1), expected)

    def test_closed_form_matches_psi(self):
        """確認封閉公式等於由 Ψ₀*Ψ₀ 改寫的結果。"""
        for n in (1, 2):
            self.assertEqual(weight_closed_form(n), weight_from_psi(n, 1))

    def test_identity_value(self):
        """確認 W 在 φ = (1,…,1) 的元素皆為 (n+1)^k。"""
        for n, k in ((1, 1), (2, 1), (1, 2), (2, 0)):
            values = weight_polynomial(n, k).at_ones()
            self.assertTrue(np.all(values == (n + 1) ** k))

    def test_k0_scalar(self):
        """確認 k=0 時 W 為 1×1 常數 1。"""
        self.assertEqual(weight_polynomial(2, 0), PhiPoly.identity(1, 2))

    def test_negative_k(self):
        """確認 k < 0 拋出 ValueError。"""
        with self.assertRaises(ValueError):
            weight_polynomial(1, -1)

    def test_numeric_torus_product(self):
        """確認 W_pol(φ(a)) 等於數值 Ψ(a)*ΛΨ(a)。"""
        for n, k in ((2, 1), (1, 2), (1, 3)):
            angles = random_torus_points(n, 20, seed=3)
            expected = weight_on_torus(n, k, angles)
            actual = weight_polynomial(n, k).to_float().evaluate(phi_on_torus(angles, n))
            np.testing.assert_allclose(actual, expected, atol=1e-10)

    def test_flip_symmetry(self):
        """確認 J·W_polᵗ·J = W_pol。"""
        for n in (2, 3, 4):
            w_pol = weight_polynomial(n, 1)
            flip = flip_matrix(n + 1)
            self.assertEqual(w_pol.transpose().left_multiply(flip).right_multiply(flip), w_pol)

    def test_positive_semidefinite(self):
        """確認環面上的權重為半正定 Hermitian 矩陣。"""
        angles = random_torus_points(2, 10, seed=5)
        for w in weight_on_torus(2, 2, angles):
            np.testing.assert_allclose(w, w.conj().T, atol=1e-12)
            self.assertGreaterEqual(np.linalg.eigvalsh(w).min(), -1e-10)


class TestCoefficientMatrices(unittest.TestCase):
    """W_(i) 與 W_(φ1) 封閉公式測試。"""

    def test_match_weight(self):
        """確認封閉公式等於 W_pol 中對應的係數。"""
        for n in (2, 3):
            w_pol = weight_polynomial(n, 1)
            for mono, matrix in coefficient_matrices(n).items():
                self.assertTrue(np.all(w_pol.coefficient(mono) == matrix))

    def test_pair_coefficient_n2(self):
        """確認 n=2 的 W_(1) 僅中央對角元素為 9/4。"""
        expected = exact_matrix([[0, 0, 0], [0, Fraction(9, 4), 0], [0, 0, 0]])
        self.assertTrue(np.all(pair_coefficient(1, 2) == expected))

    def test_linear_coefficient_n1(self):
        """確認 n=1 的 φ_1 係數為 2[[0,1],[1,0]]。"""
        self.assertTrue(np.all(linear_coefficient(1) == exact_matrix([[0, 2], [2, 0]])))

    def test_pair_out_of_range(self):
        """確認 i 超出範圍拋出 ValueError。"""
        with self.assertRaises(ValueError):
            pair_coefficient(2, 2)


class TestScalarDensity(unittest.TestCase):
    """純量密度 P 測試。"""

    def test_origin_values(self):
        """確認 P(0) 的參考值。"""
        self.assertEqual(scalar_P(1).coefficient((0,))[0, 0], -4)
        self.assertEqual(scalar_P(2).coefficient((0, 0))[0, 0], -27)
        self.assertEqual(scalar_P(3).coefficient((0, 0, 0))[0, 0], 256)

    def test_vanishes_at_identity(self):
        """確認 P(1,…,1) = 0。"""
        for n in (1, 2, 3):
            self.assertEqual(scalar_P(n).at_ones()[0, 0], 0)

    def test_equals_delta(self):
        """確認 P(φ(a)) = δ(a) 為 Laurent 恆等式。"""
        for n in (1, 2):
            self.assertEqual(substitute(scalar_P(n))[0, 0], delta_laurent(n))

    def test_interior_sign(self):
        """確認內部符號 (−1)^{n(n+1)/2}。"""
        self.assertEqual([interior_sign(n) for n in (1, 2, 3, 4)], [-1, -1, 1, 1])


class TestMeasureConstants(unittest.TestCase):
    """測度常數測試。"""

    def test_volumes(self):
        """確認區域體積 2、4π/9、π/9。"""
        self.assertAlmostEqual(measure_constants(1).volume, 2.0)
        self.assertAlmostEqual(measure_constants(2).volume, 4 * pi / 9)
        self.assertAlmostEqual(measure_constants(3).volume, pi / 9)

    def test_c1_and_selberg(self):
        """確認 c1 = 1/(n+1)! 與 Selberg 值 (n+1)!。"""
        constants = measure_constants(3)
        self.assertEqual(constants.c1, Fraction(1, 24))
        self.assertEqual(constants.selberg, 24)
        self.assertAlmostEqual(selberg_integral(3, 1.0), 24.0)

    def test_selberg_half(self):
        """確認 n=1, s=1/2 時為 4/π。"""
        self.assertAlmostEqual(selberg_integral(1, 0.5), 4 / pi)

    def test_selberg_unsupported(self):
        """確認不支援的指數拋出 ValueError。"""
        with self.assertRaises(ValueError):
            selberg_integral(2, 2.0)


class TestWeightSpec(unittest.TestCase):
    """build_weight_spec 測試。"""

    def test_spec_fields(self):
        """確認大小、前置係數與來源標記。"""
        spec = build_weight_spec(2, 1)
        self.assertEqual(spec.size, 3)
        self.assertEqual(spec.prefactor, 9)
        self.assertEqual(build_weight_spec(3, 1).prefactor, 4 * 6 * 4)
        self.assertEqual(spec.provenance, "closed-form")
        self.assertEqual(build_weight_spec(1, 0).provenance, "torus-product")
        self.assertEqual(build_weight_spec(1, 2).provenance, "congruence-class")


class TestDomain(unittest.TestCase):
    """正交區域測試。"""

    def test_real_coordinates(self):
        """確認實座標與共軛對的對應。"""
        phi = real_to_phi(np.array([[0.2, -0.3, 0.5]]), 3)
        np.testing.assert_allclose(phi[0], [0.2 - 0.3j, 0.5, 0.2 + 0.3j])
        np.testing.assert_allclose(phi_to_real(phi, 3), [[0.2, -0.3, 0.5]])
        with self.assertRaises(ValueError):
            real_to_phi(np.zeros((1, 2)), 3)

    def test_contains_interval(self):
        """確認 n=1 的區域為 [−1, 1]。"""
        self.assertTrue(domain_contains([0.0], 1, resolution=200))
        self.assertTrue(domain_contains([0.9], 1, resolution=200))
        self.assertFalse(domain_contains([1.2], 1, resolution=200))

    def test_contains_n2(self):
        """確認 n=2 的原點在區域內，角落在區域外。"""
        self.assertTrue(domain_contains([0.0, 0.0], 2, resolution=200))
        self.assertFalse(domain_contains([0.9, 0.9], 2, resolution=200))

    def test_contains_torus_images(self):
        """確認環面點的像都在區域內，包含 n=3 的非星形部分。"""
        for n in (2, 3):
            angles = random_torus_points(n, 50, seed=2)
            coords = phi_to_real(phi_on_torus(angles, n), n)
            inside = domain_contains_many(coords, n, resolution=2000)
            self.assertTrue(inside.all(), f"n={n}: {np.flatnonzero(~inside)}")

    def test_contains_n3_outside(self):
        """確認 |φ_1| > 1 的盒內點在區域外。"""
        self.assertFalse(domain_contains([0.9, 0.9, 0.9], 3, resolution=200))
        self.assertTrue(domain_contains([0.0, 0.0, 0.0], 3, resolution=200))

    def test_volume_by_grid(self):
        """確認格點體積接近封閉公式。"""
        self.assertAlmostEqual(domain_volume_by_grid(1, 400), 2.0, delta=1e-2)
        self.assertAlmostEqual(domain_volume_by_grid(2, 300), 4 * pi / 9, delta=2e-2)

    def test_volume_n3(self):
        """確認 n=3 的體積相對誤差小於 1e-3。"""
        volume = domain_volume_by_grid(3, 160)
        self.assertLess(abs(volume - pi / 9) / (pi / 9), 1e-3)

    def test_volume_invalid(self):
        """確認 grid < 2 或 refine < 1 拋出 ValueError。"""
        with self.assertRaises(ValueError):
            domain_volume_by_grid(2, 1)
        with self.assertRaises(ValueError):
            domain_volume_by_grid(2, 10, refine=0)

    def test_weight_definite_inside(self):
        """確認 W_pol 在內部點正定。"""
        for n in (2, 3):
            w_float = weight_polynomial(n, 1).to_float()
            phi = phi_on_torus(random_torus_points(n, 100, seed=9), n)
            for w in w_float.evaluate(phi):
                hermitian = (w + w.conj().T) / 2
                self.assertGreater(np.linalg.eigvalsh(hermitian).min(), 0.0)

    def test_weight_singular_on_boundary(self):
        """確認 W_pol 在邊界點有非平凡核。"""
        for n in (2, 3):
            w_float = weight_polynomial(n, 1).to_float()
            coords = np.array([p.coordinates for p in domain_boundary(n, 4)])
            for w in w_float.evaluate(real_to_phi(coords, n)):
                hermitian = (w + w.conj().T) / 2
                self.assertLess(np.abs(np.linalg.eigvalsh(hermitian)).min(), 1e-8)

    def test_boundary_n1(self):
        """確認 n=1 的邊界為 φ = ±1。"""
        points = domain_boundary(1, 4)
        values = sorted(p.coordinates[0] for p in points)
        np.testing.assert_allclose(values, [-1.0, 1.0], atol=1e-12)

    def test_boundary_on_zero_set(self):
        """確認 n=2 的邊界點滿足 P ≈ 0。"""
        points = domain_boundary(2, 6)
        coords = np.array([p.coordinates for p in points])
        values = scalar_P(2).to_float().evaluate(real_to_phi(coords, 2))[:, 0, 0]
        np.testing.assert_allclose(values, 0.0, atol=1e-9)

    def test_boundary_invalid(self):
        """確認 resolution < 1 拋出 ValueError。"""
        with self.assertRaises(ValueError):
            domain_boundary(2, 0)


if __name__ == "__main__":
    unittest.main()
