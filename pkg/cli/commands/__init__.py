"""Subcommand aggregation."""

from __future__ import annotations

import argparse

from . import converge, entropy, schemes, simulate

# Subcommand name -> module providing configure(parser) and handle(args)
COMMANDS = {
    "run": simulate,
    "converge": converge,
    "entropy": entropy,
    "schemes": schemes,
}


def register_commands(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    """Attach every subcommand with the shared --out/--log-level options."""
    for name, module in COMMANDS.items():
        parser = subparsers.add_parser(name, parents=[common], help=module.__doc__)
        module.configure(parser)
        parser.set_defaults(handler=module.handle)


__all__ = ["COMMANDS", "register_commands"]
