import pytest
import json
import sys
import os
from fractions import Fraction

sys.path.insert(0, os.path.abspath(
    os.path.join(os.path.dirname(__file__), "..")))

# autopep8: off
from src import __version__
from src.algebra_core import FieldSpec
from src.report import CheckResult, RunReport, emit_report, emit_reports, render_text, report_to_dict
# autopep8: on


@pytest.fixture
def report():
    yield RunReport("demo", "Q", 2, [
        CheckResult("theorem", True, ("degree", "rank"), [[0, 1], [1, 10]], {"phi(x1)": "y1 + e1"}, 0.5),
        CheckResult("dims", False, ("degree", "value"), [[0, Fraction(1, 2)]], seconds=0.25),
    ], seconds=0.75)


class TestRunReport:
    def test_verdicts(self, report):
        assert not report.passed
        assert report.check("theorem").passed
        assert report.check("lemma3") is None
        assert RunReport("empty", "Q", 1).passed

    def test_dict_key_order(self, report):
        data = report_to_dict(report)
        assert list(data) == ["tool", "version", "name", "field", "degree", "passed", "checks"]
        assert list(data["checks"][0]) == ["name", "passed", "columns", "rows", "notes"]
        assert data["version"] == __version__
        assert data["checks"][1]["rows"] == [[0, "1/2"]]

    def test_timing_is_opt_in(self, report):
        data = report_to_dict(report, timing=True)
        assert data["seconds"] == 0.75
        assert data["checks"][0]["seconds"] == 0.5

    def test_prime_field_cells(self):
        F7 = FieldSpec.prime(7)
        result = CheckResult("dims", True, ("value",), [[F7.coerce(Fraction(1, 2))]])
        data = report_to_dict(RunReport("p", "Fp:7", 1, [result]))
        assert data["checks"][0]["rows"] == [[4]]


class TestRendering:
    def test_text(self, report):
        lines = render_text(report).splitlines()
        assert lines[0] == f"scenario demo: field Q, degree 2, verbal_wreath {__version__}"
        assert lines[1] == "verdict: FAIL (0.750s)"
        assert lines[3] == "[theorem] PASS (0.500s)"
        assert lines[4:7] == ["  degree  rank", "  ------  ----", "       0     1"]
        assert "  phi(x1): y1 + e1" in lines

    def test_json_is_stable(self, report):
        first = emit_report(report, "json")
        assert first == emit_report(report, "json")
        assert json.loads(first)["passed"] is False
        assert first.endswith(b"\n")

    def test_unknown_format(self, report):
        with pytest.raises(ValueError):
            emit_report(report, "yaml")

    def test_several_reports(self, report):
        data = json.loads(emit_reports([report, report], "json"))
        assert [entry["name"] for entry in data] == ["demo", "demo"]
        assert emit_reports([report], "json") == emit_report(report, "json")

    def test_empty_report(self):
        empty = RunReport("empty", "Q", 1)
        assert json.loads(emit_report(empty, "json"))["checks"] == []
        assert emit_report(empty, "text").startswith(b"scenario empty")

    def test_json_matches_report_data(self, report):
        assert json.loads(emit_report(report, "json")) == report_to_dict(report)
