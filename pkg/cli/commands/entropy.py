"""Entropy decay study: relative entropy trace and exponential fit."""

from __future__ import annotations

import argparse
from pathlib import Path

from oneleg.harness import entropy_decay_study, load_problem_spec, write_snapshots, write_trace

from ._shared import add_config_arguments


def configure(parser: argparse.ArgumentParser) -> None:
    add_config_arguments(parser)


def handle(args: argparse.Namespace) -> int:
    spec = load_problem_spec(args.config, args.override)
    out = Path(args.out)
    traj, report = entropy_decay_study(spec)

    meta = {
        **spec.flat_dump(),
        "decay_slope": report.slope,
        "decay_r_squared": report.r_squared,
        "monotone": report.monotone,
        "analysis_backed": report.analysis_backed,
    }
    write_trace(traj, report.h_star, out, meta)
    write_snapshots(traj, out, meta)
    report.check()
    return 0
