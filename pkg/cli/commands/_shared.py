"""Argument helpers shared by the subcommands."""

from __future__ import annotations

import argparse

from oneleg.harness.problem import parse_rational


def positive_float(text: str) -> float:
    """argparse type: a positive real, "n/d" allowed."""
    try:
        value = float(parse_rational(text))
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from e
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def float_list(text: str) -> list[float]:
    """argparse type: comma-separated positive reals."""
    return [positive_float(part) for part in text.split(",") if part.strip()]


def rate_range(text: str) -> tuple[float, float]:
    """argparse type: "LO,HI" with LO <= HI."""
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected LO,HI, got {text!r}")
    try:
        low, high = (float(p) for p in parts)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected LO,HI, got {text!r}") from e
    if low > high:
        raise argparse.ArgumentTypeError(f"LO must not exceed HI in {text!r}")
    return low, high


def add_config_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", default=None, help="Problem spec (JSON or YAML)")
    parser.add_argument(
        "--override",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="Override a spec field, dotted keys for nested fields (repeatable)",
    )
