"""主模組單元測試。"""

import csv
import io
import json
import os
import tempfile
import unittest
from unittest.mock import patch

from su_mvop import __version__
from su_mvop.errors import QuadratureError
from su_mvop.main import main, parse_args
from su_mvop.models.reports import CheckResult


class TestPackageImport(unittest.TestCase):
    """驗證套件可正常載入。"""

    def test_version_exists(self):
        """確認版本號已定義。"""
        self.assertIsInstance(__version__, str)
        self.assertTrue(len(__version__) > 0)


class TestParseArgs(unittest.TestCase):
    """命令列解析測試。"""

    def test_defaults(self):
        """確認預設值。"""
        args = parse_args(["weight", "--n", "2"])
        self.assertEqual((args.command, args.n, args.k), ("weight", 2, 1))
        self.assertEqual((args.max_degree, args.grid_cap, args.seed), (2, 512, 0))
        self.assertEqual(args.fmt, "json")
        self.assertIsNone(args.out)

    def test_invalid_command(self):
        """確認未知子命令以結束碼 2 離開。"""
        with patch("sys.stderr", new_callable=io.StringIO):
            with self.assertRaises(SystemExit) as ctx:
                parse_args(["plot", "--n", "1"])
        self.assertEqual(ctx.exception.code, 2)


class TestMain(unittest.TestCase):
    """子命令執行測試。"""

    def test_weight_to_file(self):
        """確認 weight 子命令寫出 JSON。"""
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "weight.json")
            code = main(["weight", "--n", "1", "--out", path])
            with open(path, encoding="utf-8") as handle:
                payload = json.load(handle)
        self.assertEqual(code, 0)
        self.assertEqual(payload["provenance"], "closed-form")
        self.assertEqual(payload["size"], 2)
        self.assertIn("1.0", payload["bottom_set"])

    def test_constants_csv(self):
        """確認 constants 子命令輸出 CSV。"""
        with patch("sys.stdout", new_callable=io.StringIO) as stdout:
            code = main(["constants", "--n", "2", "--format", "csv"])
        self.assertEqual(code, 0)
        rows = list(csv.reader(io.StringIO(stdout.getvalue())))
        self.assertEqual(rows[0][:3], ["n", "c1", "selberg"])
        self.assertEqual(rows[1][:3], ["2", "1/6", "6"])

    def test_generate_rank_too_large(self):
        """確認 n > 3 的 generate 回傳結束碼 2。"""
        with patch("sys.stderr", new_callable=io.StringIO) as stderr:
            code = main(["generate", "--n", "4"])
        self.assertEqual(code, 2)
        self.assertIn("參數錯誤", stderr.getvalue())

    def test_negative_k(self):
        """確認 k < 0 回傳結束碼 2。"""
        with patch("sys.stderr", new_callable=io.StringIO):
            self.assertEqual(main(["weight", "--n", "1", "--k", "-1"]), 2)

    def test_verify_failure(self):
        """確認任一檢查失敗時 verify 回傳 1。"""
        results = [
            CheckResult("volume", "測度", True, "ok"),
            CheckResult("norms", "範數公式", False, "誤差 1e-2"),
        ]
        with patch("su_mvop.main.run_verification", return_value=results), \
                patch("sys.stdout", new_callable=io.StringIO) as stdout:
            code = main(["verify", "--n", "1"])
        self.assertEqual(code, 1)
        self.assertIn("FAIL", stdout.getvalue())

    def test_verify_success(self):
        """確認全部通過時 verify 回傳 0。"""
        results = [CheckResult("volume", "測度", True, "ok")]
        with patch("su_mvop.main.run_verification", return_value=results), \
                patch("sys.stdout", new_callable=io.StringIO):
            self.assertEqual(main(["verify", "--n", "2"]), 0)

    def test_computation_error(self):
        """確認計算錯誤回傳結束碼 1。"""
        with patch(
            "su_mvop.main.build_weight_spec", side_effect=QuadratureError("格點過大"),
        ):
            self.assertEqual(main(["commutant", "--n", "1"]), 1)


if __name__ == "__main__":
    unittest.main()
