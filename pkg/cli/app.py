"""Command-line application for oneleg."""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence

from loguru import logger

from oneleg import OnelegError, __version__, setup_logging

from .commands import register_commands


def create_parser() -> argparse.ArgumentParser:
    """Build the argument parser with one subcommand per study."""
    parser = argparse.ArgumentParser(
        prog="oneleg",
        description="Entropy-dissipative one-leg multistep schemes: runs, convergence and entropy studies.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", required=True, help="Output directory for CSV files")
    common.add_argument("--log-level", default=None, help="Overrides ONELEG_LOG_LEVEL")

    subparsers = parser.add_subparsers(dest="command", required=True)
    register_commands(subparsers, common)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Parse arguments, run the selected command, and map errors to exit codes.

    Exit codes: 0 success, 2 configuration or parameter error, 3 solver
    failure, 4 failed study assertion.
    """
    args = create_parser().parse_args(argv)
    setup_logging(args.log_level)

    try:
        return args.handler(args)
    except OnelegError as exc:
        # Log with the level the exception type declares
        log_method = getattr(logger, exc.log_level, logger.error)
        log_method("{error_code}: {details}", error_code=exc.error_code, details=str(exc.to_dict()))
        return exc.exit_code


def run() -> None:
    """Entry point for the oneleg command."""
    sys.exit(main())


if __name__ == "__main__":
    run()
