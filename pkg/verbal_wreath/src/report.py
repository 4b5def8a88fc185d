"""
Run reports: per-check verdicts with per-degree tables, rendered as aligned text
or as JSON with a stable key order.
"""
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from . import __version__
from .algebra_core import PrimeFieldElement

Cell = Any


@dataclass
class CheckResult:
    name: str
    passed: bool
    columns: Sequence[str] = ()
    rows: List[List[Cell]] = field(default_factory=list)
    notes: Dict[str, str] = field(default_factory=dict)
    seconds: float = 0.0
    internal_error: bool = False


@dataclass
class RunReport:
    name: str
    field: str
    degree: int
    checks: List[CheckResult] = field(default_factory=list)
    seconds: float = 0.0
    version: str = __version__

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def internal_error(self) -> bool:
        return any(check.internal_error for check in self.checks)

    def check(self, name: str) -> Optional[CheckResult]:
        for result in self.checks:
            if result.name == name:
                return result
        return None


def _json_cell(value: Cell) -> Cell:
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, PrimeFieldElement):
        return int(value)
    return value


def report_to_dict(report: RunReport, timing: bool = False) -> Dict[str, Any]:
    data: Dict[str, Any] = {
        "tool": "verbal_wreath",
        "version": report.version,
        "name": report.name,
        "field": report.field,
        "degree": report.degree,
        "passed": report.passed,
        "checks": [],
    }
    for check in report.checks:
        entry: Dict[str, Any] = {
            "name": check.name,
            "passed": check.passed,
            "columns": list(check.columns),
            "rows": [[_json_cell(cell) for cell in row] for row in check.rows],
            "notes": dict(check.notes),
        }
        if timing:
            entry["seconds"] = round(check.seconds, 6)
        data["checks"].append(entry)
    if timing:
        data["seconds"] = round(report.seconds, 6)
    return data


def _render_table(columns: Sequence[str], rows: List[List[Cell]]) -> List[str]:
    cells = [list(columns)] + [[str(_json_cell(cell)) for cell in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(columns))]
    lines = ["  ".join(text.rjust(width) for text, width in zip(row, widths)) for row in cells]
    lines.insert(1, "  ".join("-" * width for width in widths))
    return lines


def render_text(report: RunReport) -> str:
    verdict = "PASS" if report.passed else "FAIL"
    lines = [f"scenario {report.name}: field {report.field}, degree {report.degree}, "
             f"verbal_wreath {report.version}",
             f"verdict: {verdict} ({report.seconds:.3f}s)"]
    for check in report.checks:
        lines.append("")
        lines.append(f"[{check.name}] {'PASS' if check.passed else 'FAIL'} ({check.seconds:.3f}s)")
        if check.columns:
            lines.extend("  " + line for line in _render_table(check.columns, check.rows))
        for key, note in check.notes.items():
            lines.append(f"  {key}: {note}")
    return "\n".join(lines) + "\n"


def emit_report(report: RunReport, format: str = "text", timing: bool = False) -> bytes:
    """Text always carries timing; JSON carries it only on request so reruns compare equal."""
    if format == "json":
        return (json.dumps(report_to_dict(report, timing), indent=2) + "\n").encode("utf-8")
    if format == "text":
        return render_text(report).encode("utf-8")
    raise ValueError(f"Unknown report format '{format}'")


def emit_reports(reports: Sequence[RunReport], format: str = "text", timing: bool = False) -> bytes:
    """Several runs in one document; a single run renders exactly as emit_report."""
    if len(reports) == 1:
        return emit_report(reports[0], format, timing)
    if format == "json":
        data = [report_to_dict(r, timing) for r in reports]
        return (json.dumps(data, indent=2) + "\n").encode("utf-8")
    return b"\n".join(emit_report(r, format, timing) for r in reports)
