"""
omatrix: exact verification of classical and quantum Yang-Baxter identities,
O-operators, Poisson structures and differential Hamiltonian matrices

Usage:
    python omatrix.py [run] MANIFEST [--json PATH] [--seed N] [--max-jet-order N]
                      [--witness-limit N] [--timings] [--log-dir DIR] [--no-log]
    python omatrix.py list
    python omatrix.py explain CHECK

Exit codes: 0 when every check passes, 1 when any check fails or is skipped,
2 on refused input.
"""
import argparse
import sys
from pathlib import Path
from typing import List, Optional

from src.checks.factory import catalog, create_check
from src.checks.orchestrator import run_manifest
from src.core.errors import (
    EXIT_CHECK_FAILED,
    EXIT_INPUT_ERROR,
    EXIT_OK,
    ConfigError,
    ManifestError,
    PreconditionError,
)
from src.logging.decision_logger import DecisionLogger
from src.utils.settings import Settings

COMMANDS = ("run", "list", "explain")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="omatrix", description="Exact algebraic identity checks")
    commands = parser.add_subparsers(dest="command")

    run = commands.add_parser("run", help="Run the checks a manifest requests")
    run.add_argument("manifest", help="Path to a JSON manifest")
    run.add_argument("--json", dest="json_path", help="Also write the JSON report to this path")
    run.add_argument("--seed", type=int, help="Seed of the randomized sweeps")
    run.add_argument("--max-jet-order", type=int, help="Ceiling on jet orders")
    run.add_argument("--witness-limit", type=int, help="Nonzero defect entries listed per failing check")
    run.add_argument("--timings", action="store_true", help="Include wall time in the reports")
    run.add_argument("--log-dir", help="Root directory of the decision log")
    run.add_argument("--no-log", action="store_true", help="Do not write the decision log")

    commands.add_parser("list", help="List every check")

    explain = commands.add_parser("explain", help="Describe one check")
    explain.add_argument("check", help="Check name")
    return parser


def _normalize(argv: List[str]) -> List[str]:
    """`run` is the default command"""
    if argv and argv[0] not in COMMANDS and argv[0] not in ("-h", "--help"):
        return ["run"] + argv
    return argv


def cmd_list() -> int:
    entries = catalog()
    width = max(len(name) for name in entries)
    for name, cls in entries.items():
        print(f"{name:<{width}}  {cls.module:<12}  {cls.title}")
    print(f"{len(entries)} checks")
    return EXIT_OK


def cmd_explain(name: str) -> int:
    try:
        check = create_check(name, DecisionLogger("explain", enabled=False))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    print(check.describe())
    return EXIT_OK


def cmd_run(args: argparse.Namespace) -> int:
    try:
        settings = Settings.from_env().merged(
            seed=args.seed,
            max_jet_order=args.max_jet_order,
            witness_limit=args.witness_limit,
            log_dir=args.log_dir,
            log_decisions=False if args.no_log else None,
        )
        report, _ = run_manifest(args.manifest, settings)
    except (ManifestError, PreconditionError, ConfigError, ValueError) as exc:
        # ValueError: unknown check names and shape mismatches
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    sys.stdout.write(report.to_text(timings=args.timings))
    if args.json_path:
        Path(args.json_path).write_text(report.to_json(timings=args.timings), encoding="utf-8")
    return EXIT_OK if report.exit_code == EXIT_OK else EXIT_CHECK_FAILED


def main(argv: Optional[List[str]] = None) -> int:
    argv = _normalize(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "list":
        return cmd_list()
    if args.command == "explain":
        return cmd_explain(args.check)
    if args.command == "run":
        return cmd_run(args)
    parser.print_help()
    return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
