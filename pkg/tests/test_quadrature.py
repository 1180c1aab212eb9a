"""環面積分單元測試。"""

import unittest
from fractions import Fraction
from math import factorial
from unittest.mock import patch

import numpy as np

from su_mvop.errors import QuadratureError
from su_mvop.models.grid import GridSpec
from su_mvop.models.laurent import LaurentPoly
from su_mvop.models.phipoly import PhiPoly, exact_matrix
from su_mvop.services import quadrature_service
from su_mvop.services.quadrature_service import (
    delta_degree,
    grid_for_degree,
    inner_product,
    integrate,
    integrate_exact,
    moment_matrix,
    phi_degree,
)
from su_mvop.services.spherical_service import psi0
from su_mvop.services.symmetric_functions import phi_in_t
from su_mvop.services.weight_service import build_weight_spec


class TestIntegrate(unittest.TestCase):
    """integrate 與 integrate_exact 測試。"""

    def test_haar_total_mass(self):
        """確認 ∫|δ| da = (n+1)!。"""
        for n in (1, 2, 3):
            one = LaurentPoly.constant(1, n)
            self.assertEqual(integrate_exact(one, with_delta=True), factorial(n + 1))
            self.assertAlmostEqual(integrate(one, with_delta=True).real, factorial(n + 1))

    def test_character_orthogonality(self):
        """確認非平凡特徵標的平均為零。"""
        chi = LaurentPoly.monomial((3, -1, 0), 2)
        self.assertEqual(integrate_exact(chi), 0)
        self.assertAlmostEqual(abs(integrate(chi)), 0.0)

    def test_numeric_matches_exact(self):
        """確認格點積分與常數項抽取一致。"""
        f = phi_in_t(1, 2) * phi_in_t(1, 2).conjugate() + Fraction(1, 3)
        exact = integrate_exact(f, with_delta=True)
        self.assertAlmostEqual(integrate(f, with_delta=True).real, float(exact), places=10)

    def test_matrix_integrand(self):
        """確認矩陣被積函數逐元素積分。"""
        g = psi0(1)
        result = integrate(g.adjoint() @ g)
        np.testing.assert_allclose(result, [[2, 0], [0, 2]], atol=1e-12)

    def test_grid_cap(self):
        """確認超過上限時拋出 QuadratureError。"""
        self.assertEqual(grid_for_degree(2, 5).points_per_angle, 6)
        with self.assertRaises(QuadratureError):
            grid_for_degree(2, 40, cap=32)
        big = phi_in_t(1, 2) ** 10
        with self.assertRaises(QuadratureError):
            integrate(big, cap=8)

    def test_degrees(self):
        """確認 φ_i 與 |δ| 的單一角度 Fourier 次數。"""
        self.assertEqual(phi_degree(1), 2)
        self.assertEqual(delta_degree(1), 4)


class TestInnerProduct(unittest.TestCase):
    """矩陣內積與 Gram 矩陣測試。"""

    def test_identity_inner_product(self):
        """確認 n=1, k=1 時 ⟨I, I⟩ = 2I。"""
        spec = build_weight_spec(1, 1)
        identity = PhiPoly.identity(2, 1)
        result = inner_product(identity, identity, spec)
        np.testing.assert_allclose(result, [[2, 0], [0, 2]], atol=1e-12)

    def test_shape_mismatch(self):
        """確認列數與權重大小不符時拋出 ValueError。"""
        spec = build_weight_spec(1, 1)
        with self.assertRaises(ValueError):
            inner_product(PhiPoly.identity(3, 1), PhiPoly.identity(3, 1), spec)

    def test_zero_polynomial(self):
        """確認零多項式的內積為零。"""
        spec = build_weight_spec(1, 1)
        zero = PhiPoly.zero(1, (2, 2))
        np.testing.assert_array_equal(inner_product(zero, PhiPoly.identity(2, 1), spec), 0)

    def test_moment_matrix(self):
        """確認 Gram 矩陣為對稱正定，且 ⟨1, 1⟩ = 1（k=0）。"""
        spec = build_weight_spec(2, 0)
        basis, gram = moment_matrix(spec, 2)
        self.assertEqual(len(basis), 6)
        self.assertEqual(basis[0], ((0, 0), 0))
        np.testing.assert_allclose(gram, gram.T, atol=1e-12)
        self.assertAlmostEqual(gram[0, 0], 1.0)
        self.assertGreater(np.linalg.eigvalsh(gram).min(), 0.0)

    def test_moment_matches_inner_product(self):
        """確認 Gram 矩陣元素等於單項式的內積。"""
        spec = build_weight_spec(1, 1)
        basis, gram = moment_matrix(spec, 1)
        identity = PhiPoly.identity(2, 1)
        block = inner_product(identity, identity.times_monomial((1,)), spec)
        index = {key: pos for pos, key in enumerate(basis)}
        for r in range(2):
            for s in range(2):
                self.assertAlmostEqual(
                    gram[index[((0,), r)], index[((1,), s)]], block[r, s].real,
                )


def _sample_pair() -> tuple[PhiPoly, PhiPoly]:
    """n=2, k=1 的兩個非對稱 3×3 φ 多項式。"""
    matrix = exact_matrix([[1, 2, 0], [0, 1, -1], [3, 0, 1]])
    identity = PhiPoly.identity(3, 2)
    p = identity.times_monomial((1, 0)) + PhiPoly.constant(matrix, 2)
    q = identity.times_monomial((0, 1)).right_multiply(matrix) + identity
    return p, q


class TestInnerProductProperties(unittest.TestCase):
    """內積的 Hermitian 對稱與格點穩定性測試。"""

    def test_hermitian_symmetry(self):
        """確認 ⟨P, Q⟩ = ⟨Q, P⟩*。"""
        spec = build_weight_spec(2, 1)
        p, q = _sample_pair()
        np.testing.assert_allclose(
            inner_product(p, q, spec), inner_product(q, p, spec).conj().T,
            rtol=1e-10, atol=1e-10,
        )

    def test_grid_doubling(self):
        """確認格點加倍後內積與 Gram 矩陣不變。"""
        spec = build_weight_spec(2, 1)
        p, q = _sample_pair()
        original = quadrature_service._grid_for_phi

        def doubled(n, degree, cap):
            grid = original(n, degree, cap)
            return GridSpec(n, 2 * grid.points_per_angle)

        expected = inner_product(p, q, spec)
        _, gram = moment_matrix(spec, 1)
        with patch.object(quadrature_service, "_grid_for_phi", side_effect=doubled):
            refined = inner_product(p, q, spec)
            _, gram_refined = moment_matrix(spec, 1)
        np.testing.assert_allclose(refined, expected, rtol=1e-10, atol=1e-10)
        np.testing.assert_allclose(gram_refined, gram, rtol=1e-10, atol=1e-10)


if __name__ == "__main__":
    unittest.main()
