"""設定與日誌模組單元測試。"""

import logging
import os
import unittest
from unittest.mock import patch

from su_mvop.config import Settings, load_settings
from su_mvop.errors import LabelAmbiguityError, MvopError, QuadratureError
from su_mvop.logger import setup_logger


class TestLoadSettings(unittest.TestCase):
    """load_settings 測試。"""

    def test_defaults(self):
        """確認未設定環境變數時使用預設值。"""
        with patch.dict(os.environ, {}, clear=True):
            self.assertEqual(load_settings(), Settings())

    def test_env_override(self):
        """確認環境變數覆寫設定。"""
        env = {"MVOP_MAX_FOURIER_DEGREE": "64", "MVOP_EIGEN_TOL": "1e-6"}
        with patch.dict(os.environ, env, clear=True):
            settings = load_settings()
        self.assertEqual(settings.max_fourier_degree, 64)
        self.assertAlmostEqual(settings.eigen_tol, 1e-6)
        self.assertEqual(settings.grid_chunk, 4096)

    def test_invalid_value(self):
        """確認無法轉換的值拋出 ValueError。"""
        with patch.dict(os.environ, {"MVOP_GRID_CHUNK": "many"}, clear=True):
            with self.assertRaises(ValueError):
                load_settings()


class TestSetupLogger(unittest.TestCase):
    """setup_logger 測試。"""

    def test_handlers_not_duplicated(self):
        """確認重複呼叫不會重複加入 handler。"""
        logger = setup_logger("su_mvop_test")
        count = len(logger.handlers)
        self.assertIs(setup_logger("su_mvop_test"), logger)
        self.assertEqual(len(logger.handlers), count)
        self.assertEqual(logger.level, logging.DEBUG)


class TestErrors(unittest.TestCase):
    """例外類別測試。"""

    def test_hierarchy(self):
        """確認所有計算錯誤皆為 MvopError。"""
        self.assertTrue(issubclass(QuadratureError, MvopError))
        error = LabelAmbiguityError("碰撞", [((1, 0), 0)])
        self.assertIsInstance(error, MvopError)
        self.assertEqual(error.labels, [((1, 0), 0)])


if __name__ == "__main__":
    unittest.main()
