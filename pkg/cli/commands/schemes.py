"""Write the scheme catalogue with G-stability certification results."""

from __future__ import annotations

import argparse
from pathlib import Path

from oneleg.harness import scheme_report, write_schemes


def configure(parser: argparse.ArgumentParser) -> None:
    pass


def handle(args: argparse.Namespace) -> int:
    write_schemes(scheme_report(), Path(args.out))
    return 0
