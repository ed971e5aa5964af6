"""Command line: ``gitbench run <file>`` and ``gitbench paper-suite``.

Exit status 0 when no task fails, 1 on a mismatch or task error, 2 on usage or parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys

from .anchors import MODULES
from .scenario import Report, ScenarioError, paper_suite, run_scenario

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


def _emit(report: Report, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(report.as_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(report.to_text())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gitbench", description="exact GIT and divisor-class verification")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--filter", choices=MODULES + ("cli_runner",), metavar="MODULE",
                        help="only tasks of this module: " + ", ".join(MODULES))
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", parents=[common], help="run a scenario file")
    run.add_argument("file")
    sub.add_parser("paper-suite", parents=[common], help="run the built-in anchor suite")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        report = run_scenario(args.file, args.filter) if args.command == "run" else paper_suite(args.filter)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(report, args.format)
    return EXIT_OK if report.ok else EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
