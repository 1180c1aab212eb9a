"""JSON 與 CSV 輸出單元測試。"""

import csv
import io
import json
import os
import tempfile
import unittest
from fractions import Fraction
from unittest.mock import patch

from su_mvop.models.laurent import LaurentPoly
from su_mvop.models.phipoly import PhiPoly
from su_mvop.models.reports import CheckResult, CommutantReport
from su_mvop.models.weights import BoundaryPoint
from su_mvop.services import export_service
from su_mvop.services.weight_service import build_weight_spec


class TestBuilders(unittest.TestCase):
    """序列化 dict 建構測試。"""

    def test_composition_key(self):
        """確認組合字串格式。"""
        self.assertEqual(export_service.composition_key((1, 0, 2)), "1.0.2")

    def test_laurent_to_json(self):
        """確認 Laurent 多項式以分子分母字串表示。"""
        p = LaurentPoly(1, {(1, 0): Fraction(-1, 2), (0, 0): 3})
        self.assertEqual(
            export_service.laurent_to_json(p),
            [
                {"e": [0, 0], "num": "3", "den": "1"},
                {"e": [1, 0], "num": "-1", "den": "2"},
            ],
        )

    def test_phipoly_to_json(self):
        """確認係數矩陣以 "p/q" 字串表示，依次數排列。"""
        q = PhiPoly.scalar(2, {(0, 1): Fraction(2, 3), (0, 0): 1})
        payload = export_service.phipoly_to_json(q)
        self.assertEqual(payload["shape"], [1, 1])
        self.assertEqual(payload["terms"][0], {"m": [0, 0], "coef": [["1"]]})
        self.assertEqual(payload["terms"][1], {"m": [0, 1], "coef": [["2/3"]]})

    def test_weight_spec_to_json(self):
        """確認權重規格欄位。"""
        payload = export_service.weight_spec_to_json(build_weight_spec(1, 1))
        self.assertEqual(payload["size"], 2)
        self.assertEqual(payload["prefactor"], "2")
        self.assertEqual(payload["provenance"], "closed-form")
        self.assertEqual(payload["p"]["terms"][0]["coef"], [["-4"]])

    def test_bottom_set_to_json(self):
        """確認底層集合以組合字串為鍵。"""
        payload = export_service.bottom_set_to_json(2, 1)
        self.assertEqual(list(payload), ["1.0.0", "0.1.0", "0.0.1"])
        self.assertEqual([v["weyl_dim"] for v in payload.values()], [3, 9, 3])

    def test_commutant_to_json(self):
        """確認判定結果以字串輸出。"""
        report = CommutantReport(
            n=1, k=1, dim_aw=2, dim_script_aw=2,
            star_invariant=True, hermitian_match=True, samples=10,
        )
        payload = export_service.commutant_to_json(report)
        self.assertEqual(payload["verdict"], "reducible")
        self.assertEqual(payload["dim_aw"], 2)


class TestRows(unittest.TestCase):
    """CSV 列與表格測試。"""

    def test_boundary_rows(self):
        """確認邊界表欄位。"""
        header, rows = export_service.boundary_rows(
            [BoundaryPoint((0.0, 1.0), (0.5, -0.5))]
        )
        self.assertEqual(header, ["b1", "b2", "x1", "x2"])
        self.assertEqual(rows, [[0.0, 1.0, 0.5, -0.5]])
        self.assertEqual(export_service.boundary_rows([]), ([], []))

    def test_bottom_set_rows(self):
        """確認底層集合表。"""
        header, rows = export_service.bottom_set_rows(1, 1)
        self.assertEqual(header, ["sigma", "left", "right", "weyl_dim"])
        self.assertEqual(rows[0], ["1.0", "1.0", "0.0", 2])

    def test_render_table(self):
        """確認 PASS/FAIL 與分隔線。"""
        results = [
            CheckResult("volume", "測度", True, "誤差 1e-4"),
            CheckResult("selberg", "常數", False),
        ]
        lines = export_service.render_table(results).splitlines()
        self.assertEqual(len(lines), 4)
        self.assertTrue(set(lines[1]) <= {"-", " "})
        self.assertIn("PASS", lines[2])
        self.assertIn("FAIL", lines[3])


class TestWriters(unittest.TestCase):
    """寫出測試。"""

    def test_write_json_file(self):
        """確認 JSON 寫入檔案並保留中文。"""
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "out.json")
            export_service.write_json({"名稱": "權重", "n": 2}, out=path)
            with open(path, encoding="utf-8") as handle:
                text = handle.read()
        self.assertIn("權重", text)
        self.assertEqual(json.loads(text), {"名稱": "權重", "n": 2})

    def test_write_csv_stdout(self):
        """確認未指定檔案時寫到標準輸出。"""
        with patch("sys.stdout", new_callable=io.StringIO) as stdout:
            export_service.write_csv(["a", "b"], [[1, "x"], [2, "y"]])
        rows = list(csv.reader(io.StringIO(stdout.getvalue())))
        self.assertEqual(rows, [["a", "b"], ["1", "x"], ["2", "y"]])

    def test_check_rows(self):
        """確認檢查結果的 CSV 與 JSON 形式。"""
        results = [CheckResult("volume", "測度", True, "ok")]
        header, rows = export_service.check_rows(results)
        self.assertEqual(header, ["name", "anchor", "passed", "detail"])
        self.assertEqual(rows, [["volume", "測度", True, "ok"]])
        self.assertEqual(
            export_service.checks_to_json(results),
            [{"name": "volume", "anchor": "測度", "passed": True, "detail": "ok"}],
        )


if __name__ == "__main__":
    unittest.main()
