import io
import json
import unittest
from typing import List, Tuple
from unittest.mock import patch

from src.anaconda.evolution.algebra.sdk import EvolutionAlgebraClient
from src.anaconda.evolution.algebra.sdk.cli import build_parser, run
from src.anaconda.evolution.algebra.sdk.contracts.errors import ClassificationFailedError

FIXTURES: str = "test/fixtures/matrices"


def invoke(arguments: List[str]) -> Tuple[int, str]:
    with patch("sys.stdout", new_callable=io.StringIO) as stdout, patch("sys.stderr", new_callable=io.StringIO):
        code: int = run(arguments)
    return code, stdout.getvalue()


class TestParser(unittest.TestCase):
    def test_subcommands(self):
        args = build_parser().parse_args(["table2d", "--class", "E6", "--a2", "0.5", "--a3", "1.5"])
        self.assertEqual((args.command, args.label, args.a2, args.a3), ("table2d", "E6", 0.5, 1.5))
        self.assertEqual(args.format, "json")

    def test_missing_command(self):
        self.assertEqual(invoke([])[0], 2)

    def test_missing_required_argument(self):
        self.assertEqual(invoke(["classify"])[0], 2)

    def test_exclusive_linearize_target(self):
        self.assertEqual(invoke(["linearize", "--input", f"{FIXTURES}/e2.json", "--point", "1,0", "--all"])[0], 2)


class TestRun(unittest.TestCase):
    def test_classify(self):
        code, output = invoke(["classify", "--input", f"{FIXTURES}/e5_scaled.json", "--witness"])
        self.assertEqual(code, 0)
        report = json.loads(output)
        self.assertEqual(report["command"], "classify")
        self.assertEqual(report["results"]["label"], "E5")
        self.assertTrue(report["results"]["verified"])
        self.assertEqual(len(report["results"]["witness"]), 2)
        self.assertEqual(report["inputs"]["input"]["matrix"], [[0.0, 3.0], [0.0, -3.0]])

    def test_classify_3d_plain_text(self):
        code, output = invoke(["classify", "--input", f"{FIXTURES}/e2_3d.txt"])
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(output)["results"]["trace"], ["1", "1.1", "1.1.1", "1.1.1.2"])

    def test_rank_not_one(self):
        self.assertEqual(invoke(["classify", "--input", f"{FIXTURES}/identity_3d.json"]), (2, ""))

    def test_malformed_input(self):
        self.assertEqual(invoke(["classify", "--input", f"{FIXTURES}/malformed.json"])[0], 2)

    def test_classification_failed(self):
        failure = ClassificationFailedError("no witness", ["1", "1.2"])
        with patch.object(EvolutionAlgebraClient, "classify", side_effect=failure):
            self.assertEqual(invoke(["classify", "--input", f"{FIXTURES}/e2.json"])[0], 1)

    def test_unexpected_failure(self):
        with patch.object(EvolutionAlgebraClient, "classify", side_effect=ZeroDivisionError("float division by zero")):
            self.assertEqual(invoke(["classify", "--input", f"{FIXTURES}/e2.json"]), (3, ""))

    def test_classify_large_entries(self):
        code, output = invoke(["classify", "--input", f"{FIXTURES}/e8_large.json", "--witness"])
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(output)["results"]["label"], "E8")

    def test_tolerance_violation(self):
        with patch.object(EvolutionAlgebraClient, "verify", return_value=(False, 1.0)):
            self.assertEqual(invoke(["classify", "--input", f"{FIXTURES}/e2.json"])[0], 3)

    def test_fixed_points(self):
        code, output = invoke(["fixed-points", "--input", f"{FIXTURES}/e7_below_bound.json"])
        self.assertEqual(code, 0)
        results = json.loads(output)["results"]
        self.assertEqual(len(results["points"]), 3)
        self.assertEqual(results["method"], "closed-form")

    def test_linearize_point(self):
        code, output = invoke(["linearize", "--input", f"{FIXTURES}/e2.json", "--point", "1,0"])
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(output)["results"][0]["jacobian_matrix"], [[2.0, 0.0], [0.0, 0.0]])

    def test_linearize_bad_point(self):
        self.assertEqual(invoke(["linearize", "--input", f"{FIXTURES}/e2.json", "--point", "1,x"])[0], 2)
        self.assertEqual(invoke(["linearize", "--input", f"{FIXTURES}/e2.json", "--point", "1,0,0"])[0], 2)

    def test_iso_found(self):
        code, output = invoke(["iso", "--a", f"{FIXTURES}/e2_mixed.json", "--b", f"{FIXTURES}/e2.json"])
        self.assertEqual(code, 0)
        results = json.loads(output)["results"]
        self.assertTrue(results["found"])
        self.assertEqual(results["reason"], "least-squares")

    def test_iso_require_found(self):
        arguments = ["iso", "--a", f"{FIXTURES}/e5_scaled.json", "--b", f"{FIXTURES}/e2.json", "--restarts", "2"]
        code, output = invoke(arguments)
        self.assertEqual(code, 0)
        self.assertFalse(json.loads(output)["results"]["found"])
        self.assertEqual(invoke(arguments + ["--require-found"])[0], 1)

    def test_table2d(self):
        code, output = invoke(["table2d", "--class", "E7", "--a4", "-2"])
        self.assertEqual(code, 0)
        results = json.loads(output)["results"]
        self.assertEqual(results["class"], "E7(-2.0)")
        self.assertEqual(len(results["rows"]), 3)

    def test_table2d_incomplete_e6(self):
        self.assertEqual(invoke(["table2d", "--class", "E6", "--a2", "1"])[0], 2)

    def test_canonical(self):
        code, output = invoke(["canonical", "--dim", "3", "--label", "E11"])
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(output)["results"]["matrix"], [[0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [1.0, 0.0, 0.0]])

    def test_text_format(self):
        code, output = invoke(["canonical", "--dim", "2", "--label", "E3", "--format", "text"])
        self.assertEqual(code, 0)
        self.assertTrue(output.startswith("canonical (version"))
        self.assertIn("-1.0", output)

    def test_deterministic_output(self):
        arguments = ["fixed-points", "--input", f"{FIXTURES}/e5_scaled.json", "--seed", "3"]
        self.assertEqual(invoke(arguments), invoke(arguments))
        self.assertEqual(json.loads(invoke(arguments)[1])["seed"], 3)


if __name__ == "__main__":
    runner = unittest.TextTestRunner()
    runner.run(TestRun())
