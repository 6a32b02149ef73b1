"""CSV writers with a ``# key=value`` provenance header.

Outputs carry no timestamps, so identical invocations produce identical
files.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd
from loguru import logger

from ..core.config import get_settings
from ..integrator.types import Trajectory
from .studies import ConvergenceReport


def _format_value(value: Any) -> str:
    if isinstance(value, float):
        return get_settings().csv_float_format % value
    return str(value)


def write_csv(frame: pd.DataFrame, path: Path, meta: dict[str, Any] | None = None) -> Path:
    """Write frame to path, preceded by one ``# key=value`` line per meta entry."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as fh:
        for key, value in (meta or {}).items():
            fh.write(f"# {key}={_format_value(value)}\n")
        frame.to_csv(fh, index=False, float_format=get_settings().csv_float_format, lineterminator="\n")
    logger.debug(f"Wrote {len(frame)} rows to {path}")
    return path


def trace_frame(traj: Trajectory, h_star: float) -> pd.DataFrame:
    """Entropy trace: step, time, H, E_rel, production, min_w, mass_residual."""
    rows = [
        {
            "step": rec.step,
            "time": rec.time,
            "H": rec.diagnostics.entropy,
            "E_rel": rec.diagnostics.entropy - h_star,
            "production": rec.diagnostics.entropy_production,
            "min_w": rec.diagnostics.min_w,
            "mass_residual": rec.diagnostics.max_mass_residual,
        }
        for rec in traj.records
    ]
    return pd.DataFrame(rows, columns=["step", "time", "H", "E_rel", "production", "min_w", "mass_residual"])


def write_trace(traj: Trajectory, h_star: float, out_dir: Path, meta: dict[str, Any]) -> Path:
    return write_csv(trace_frame(traj, h_star), out_dir / "trace.csv", {**meta, "h_star": h_star})


def write_snapshots(traj: Trajectory, out_dir: Path, meta: dict[str, Any]) -> list[Path]:
    """One snapshots/step_<k>.csv per snapshot with columns x, u1[, u2]."""
    paths = []
    for k, density in sorted(traj.snapshots.items()):
        columns = {"x": density.nodes}
        for j in range(density.n_species):
            columns[f"u{j + 1}"] = np.asarray(density.values[j])
        paths.append(write_csv(pd.DataFrame(columns), out_dir / "snapshots" / f"step_{k}.csv", {**meta, "step": k}))
    return paths


def write_convergence(report: ConvergenceReport, out_dir: Path, meta: dict[str, Any]) -> Path:
    frame = pd.DataFrame({"tau": report.taus, "error": report.errors})
    header = {**meta, "rate": report.rate, "r_squared": report.r_squared, "tau_ref": report.tau_ref, "t_m": report.t_m}
    return write_csv(frame, out_dir / "convergence.csv", header)


def write_schemes(frame: pd.DataFrame, out_dir: Path) -> Path:
    return write_csv(frame, out_dir / "schemes.csv")
