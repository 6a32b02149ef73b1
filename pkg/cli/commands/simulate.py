"""Run one simulation and write its entropy trace and snapshots."""

from __future__ import annotations

import argparse
from pathlib import Path

from loguru import logger

from oneleg import RunAbortedError, run
from oneleg.harness import load_problem_spec, stationary_entropy, write_snapshots, write_trace
from oneleg.integrator import Trajectory

from ._shared import add_config_arguments


def configure(parser: argparse.ArgumentParser) -> None:
    add_config_arguments(parser)


def _write(traj: Trajectory, out: Path, meta: dict) -> None:
    if not traj.records:
        return
    write_trace(traj, stationary_entropy(traj.entropies), out, meta)
    write_snapshots(traj, out, meta)


def handle(args: argparse.Namespace) -> int:
    spec = load_problem_spec(args.config, args.override)
    out = Path(args.out)
    meta = spec.flat_dump()
    try:
        traj = run(spec)
    except RunAbortedError as e:
        # Keep what was computed before the failure
        if e.trajectory is not None:
            _write(e.trajectory, out, {**meta, "aborted_at_step": e.context.get("step", -1)})
        raise

    _write(traj, out, meta)
    logger.info(f"Wrote {len(traj.records)} trace rows to {out}")
    return 0
