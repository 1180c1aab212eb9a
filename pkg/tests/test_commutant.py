"""交換子代數與可約性單元測試。"""

import unittest

from su_mvop.models.reports import Verdict
from su_mvop.services.commutant_service import (
    analyze,
    exact_commutant_dimension,
    exact_star_dimension,
    structured_checks,
)
from su_mvop.services.weight_service import build_weight_spec, weight_polynomial


class TestAnalyze(unittest.TestCase):
    """取樣分析測試。"""

    def test_reducible_rank_one(self):
        """確認 n=1, k=1 的權重可約（dim A_W = 2）。"""
        report = analyze(build_weight_spec(1, 1), seed=1)
        self.assertEqual(report.dim_aw, 2)
        self.assertEqual(report.dim_script_aw, 2)
        self.assertTrue(report.star_invariant)
        self.assertEqual(report.verdict, Verdict.REDUCIBLE)

    def test_irreducible(self):
        """確認 n=2, k=1 的權重不可約。"""
        report = analyze(build_weight_spec(2, 1))
        self.assertEqual(report.dim_aw, 1)
        self.assertEqual(report.dim_script_aw, 1)
        self.assertTrue(report.hermitian_match)
        self.assertEqual(report.verdict, Verdict.IRREDUCIBLE)

    def test_irreducible_n3(self):
        """確認 n=3, k=1 的權重不可約。"""
        report = analyze(build_weight_spec(3, 1))
        self.assertEqual((report.dim_aw, report.dim_script_aw), (1, 1))
        self.assertTrue(report.star_invariant)
        self.assertEqual(report.verdict, Verdict.IRREDUCIBLE)

    def test_scalar_weight(self):
        """確認 1×1 權重的交換子為 ℂ。"""
        report = analyze(build_weight_spec(1, 0))
        self.assertEqual((report.dim_aw, report.dim_script_aw), (1, 1))
        self.assertEqual(report.samples, 4)

    def test_too_few_samples(self):
        """確認取樣點數少於 N²+1 時拋出 ValueError。"""
        with self.assertRaises(ValueError):
            analyze(build_weight_spec(2, 1), samples=5)


class TestExact(unittest.TestCase):
    """精確路徑測試。"""

    def test_commutant_dimension(self):
        """確認 A_W 的精確維度。"""
        self.assertEqual(exact_commutant_dimension(weight_polynomial(1, 1)), 2)
        self.assertEqual(exact_commutant_dimension(weight_polynomial(2, 1)), 1)

    def test_star_dimension(self):
        """確認 𝒜_W 的精確維度與 ∗ 封閉性。"""
        self.assertEqual(exact_star_dimension(weight_polynomial(1, 1)), (2, True))
        self.assertEqual(exact_star_dimension(weight_polynomial(2, 1)), (1, True))

    def test_structured(self):
        """確認係數論證在 n=2, 3 成立。"""
        self.assertTrue(structured_checks(2))
        self.assertTrue(structured_checks(3))

    def test_structured_rank_one(self):
        """確認 n=1 拋出 ValueError。"""
        with self.assertRaises(ValueError):
            structured_checks(1)


if __name__ == "__main__":
    unittest.main()
