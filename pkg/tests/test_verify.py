"""驗證套件單元測試。"""

import unittest
from math import pi
from unittest.mock import patch

from su_mvop.errors import QuadratureError
from su_mvop.services.verify_service import (
    check_barycenter,
    check_volume,
    check_weight_identity,
)


class TestVolumeCheck(unittest.TestCase):
    """check_volume 測試。"""

    def test_tolerance(self):
        """確認相對誤差 2e-3 判定失敗、5e-4 判定通過。"""
        volume = pi / 9
        with patch(
            "su_mvop.services.verify_service.domain_volume_by_grid",
            return_value=volume * (1 - 2e-3),
        ):
            self.assertFalse(check_volume(3).passed)
        with patch(
            "su_mvop.services.verify_service.domain_volume_by_grid",
            return_value=volume * (1 - 5e-4),
        ):
            self.assertTrue(check_volume(3).passed)

    def test_rank_two(self):
        """確認 n=2 的格點體積通過檢查。"""
        result = check_volume(2)
        self.assertTrue(result.passed, result.detail)

    def test_error_recorded(self):
        """確認計算錯誤記為失敗並保留訊息。"""
        with patch(
            "su_mvop.services.verify_service.domain_volume_by_grid",
            side_effect=QuadratureError("格點過大"),
        ):
            result = check_volume(2)
        self.assertFalse(result.passed)
        self.assertIn("格點過大", result.detail)


class TestWeightChecks(unittest.TestCase):
    """權重與重心檢查測試。"""

    def test_weight_identity(self):
        """確認 n=2 的權重恆等式與翻轉對稱成立。"""
        result = check_weight_identity(2)
        self.assertTrue(result.passed, result.detail)
        self.assertIn("翻轉對稱=True", result.detail)

    def test_barycenter(self):
        """確認重心的 φ 像為原點。"""
        for n in (1, 2, 3):
            result = check_barycenter(n)
            self.assertTrue(result.passed, result.detail)


if __name__ == "__main__":
    unittest.main()
