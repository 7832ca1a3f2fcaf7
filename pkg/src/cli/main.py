import argparse
import sys
from typing import Optional, Sequence

from src.__version__ import __version__
from src.errors import DomainError, InconsistencyError, VerificationError
from src.logging_config import get_logger, setup_logging

from .commands import (
    EXIT_FAILURE,
    EXIT_USAGE,
    cmd_analyze,
    cmd_batch,
    cmd_tables,
    cmd_verify_paper,
)

logger = get_logger(__name__)

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]


def _add_fixture(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--fixture",
        default=None,
        help="Fixture file of curves and expected growth (default: bundled examples)",
    )


def _add_json(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json", action="store_true", help="Print a JSON document")


def _add_jobs(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--jobs", type=int, default=None, help="Worker threads (default: config jobs)"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torsion-growth",
        description="Torsion growth of elliptic curves over quadratic fields.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--log-level",
        type=str.upper,
        choices=LOG_LEVELS,
        default=None,
        help="Override the configured log level",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    analyze = commands.add_parser("analyze", help="Analyze one curve")
    source = analyze.add_mutually_exclusive_group(required=True)
    source.add_argument("--coeffs", help="Weierstrass coefficients a1,a2,a3,a4,a6")
    source.add_argument("--label", help="Label of a curve in the fixture")
    _add_fixture(analyze)
    _add_json(analyze)
    analyze.set_defaults(handler=cmd_analyze)

    batch = commands.add_parser("batch", help="Analyze every curve in a fixture")
    _add_fixture(batch)
    _add_jobs(batch)
    _add_json(batch)
    batch.set_defaults(handler=cmd_batch)

    verify = commands.add_parser(
        "verify-paper",
        aliases=["verify-examples"],
        help="Compare a fixture's expected growth with computed growth",
    )
    _add_fixture(verify)
    _add_jobs(verify)
    _add_json(verify)
    verify.set_defaults(handler=cmd_verify_paper)

    tables = commands.add_parser("tables", help="Print the classification tables")
    _add_json(tables)
    tables.set_defaults(handler=cmd_tables)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    if getattr(args, "jobs", None) is not None and args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_USAGE

    setup_logging(log_level=args.log_level)
    try:
        return args.handler(args)
    except VerificationError as e:
        print(f"verification failed: {e}", file=sys.stderr)
        return EXIT_FAILURE
    except DomainError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except InconsistencyError as e:
        logger.error(f"Internal consistency check failed: {e}")
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_FAILURE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
