"""
Command-line entry point.

    python -m src.cli verify scenarios/headline.json --format json
    python -m src.cli dims scenarios/*.json --jobs 4
    python -m src.cli wreath-table scenarios/headline.json --degree 2

Exit codes: 0 when every requested verdict passed, 1 when one failed, 2 on usage,
parse or config errors, 3 when a check or config raised an internal error.
"""
import argparse
import logging
import os
import sys
import tempfile
from typing import List, Optional, Sequence

from .config import load_config
from .exceptions import AlgebraError, BasisSizeExceededError, InvalidScenarioError, ParseError
from .report import RunReport, emit_reports
from .runner import ScenarioRunner
from .wreath import action_table

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


def write_atomic(path: str, data: bytes) -> None:
    """Writes through a temp file in the target directory, then renames over the target."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, temp_path = tempfile.mkstemp(dir=directory, prefix=".verbal_wreath-", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
        os.replace(temp_path, path)
    except BaseException:
        if os.path.exists(temp_path):
            os.remove(temp_path)
        raise


def _output(data: bytes, path: Optional[str]) -> None:
    if path:
        write_atomic(path, data)
        logging.info(f"Report written to {path}")
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="verbal_wreath",
        description="Verify embeddings of Lie representation pairs into mixed verbal wreath products")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="override the config field: Q or Fp:<p>")
    common.add_argument("--degree", type=int, help="override the truncation degree")
    common.add_argument("--format", choices=("text", "json"), default="text", help="report format")
    common.add_argument("--output", help="write the report to this file instead of stdout")
    common.add_argument("--timing", action="store_true", help="include wall-clock times in JSON reports")
    common.add_argument("--verbose", action="store_true", help="log at DEBUG level")

    commands = parser.add_subparsers(dest="command", required=True)
    verify = commands.add_parser("verify", parents=[common], help="run the checks each config requests")
    verify.add_argument("configs", nargs="+")
    verify.add_argument("--jobs", type=int, default=1, help="configs to run in parallel")
    dims = commands.add_parser("dims", parents=[common], help="per-degree dimension tables only")
    dims.add_argument("configs", nargs="+")
    dims.add_argument("--jobs", type=int, default=1, help="configs to run in parallel")
    table = commands.add_parser("wreath-table", parents=[common], help="dump the wreath module action table")
    table.add_argument("config")
    return parser


def _run_reports(args: argparse.Namespace, checks: Optional[Sequence[str]]) -> int:
    if args.jobs < 1:
        logging.error("--jobs must be at least 1")
        return EXIT_USAGE
    outcomes = ScenarioRunner(args.jobs).run(args.configs, args.field, args.degree, checks)
    errors = [outcome for outcome in outcomes if outcome.error is not None]
    for outcome in errors:
        print(f"{outcome.path}: {outcome.error}", file=sys.stderr)
    reports: List[RunReport] = [outcome.report for outcome in outcomes if outcome.report is not None]
    if reports:
        _output(emit_reports(reports, args.format, args.timing), args.output)
    if any(outcome.internal for outcome in errors) or any(report.internal_error for report in reports):
        return EXIT_INTERNAL
    if errors:
        return EXIT_USAGE
    return EXIT_PASS if all(report.passed for report in reports) else EXIT_FAIL


def _wreath_table(args: argparse.Namespace) -> int:
    config = load_config(args.config, args.field, args.degree)
    scenario = config.scenario()
    _output(action_table(scenario.codomain.module).encode("utf-8"), args.output)
    return EXIT_PASS


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format='%(asctime)s - %(processName)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )
    try:
        if args.command == "verify":
            return _run_reports(args, None)
        if args.command == "dims":
            return _run_reports(args, ["dims"])
        return _wreath_table(args)
    except (OSError, ParseError, InvalidScenarioError, BasisSizeExceededError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except AlgebraError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL
    except Exception as e:
        logging.exception("Internal error")
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
