"""Time integration: damped Newton, Euler startup, one-leg steps and runs."""

from .newton import newton_solve
from .stepper import euler_startup, run, snapshot_density, step
from .types import NewtonOptions, StepDiagnostics, StepRecord, Trajectory

__all__ = [
    "NewtonOptions",
    "StepDiagnostics",
    "StepRecord",
    "Trajectory",
    "newton_solve",
    "euler_startup",
    "step",
    "run",
    "snapshot_density",
]
