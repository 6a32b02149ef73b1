"""Value types shared by the Newton solver, the stepper and the harness."""

from __future__ import annotations

import math

from pydantic import BaseModel, ConfigDict, Field

from ..core.config import get_settings
from ..entropy.grid import GridState, History


class NewtonOptions(BaseModel):
    """Stopping and damping limits of the Newton solve.

    Defaults come from the ONELEG_NEWTON_* settings at construction time.

    Attributes:
        tol_residual: Max-norm residual tolerance
        max_iters: Newton iteration cap
        max_halvings: Step-halving cap within one iteration
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    tol_residual: float = Field(default_factory=lambda: get_settings().newton_tol_residual, gt=0)
    max_iters: int = Field(default_factory=lambda: get_settings().newton_max_iters, ge=1)
    max_halvings: int = Field(default_factory=lambda: get_settings().newton_max_halvings, ge=1)


class StepDiagnostics(BaseModel):
    """Per-step solver and entropy diagnostics.

    newton_solve fills the solver fields; the stepper adds the rest.

    Attributes:
        newton_iters: Newton iterations used
        residual_norm: Final max-norm residual
        entropy: H of the window ending at the new state
        entropy_production: Production diagnostic of the blended w
        mass_residual: Weighted mass identity residual per species
        min_sigma_v: Minimum of sigma(E)v
        min_w: Minimum of w
    """

    model_config = ConfigDict(frozen=True)

    newton_iters: int = 0
    residual_norm: float = 0.0
    entropy: float = math.nan
    entropy_production: float = math.nan
    mass_residual: tuple[float, ...] = ()
    min_sigma_v: float = math.nan
    min_w: float = math.nan

    @property
    def max_mass_residual(self) -> float:
        return max((abs(m) for m in self.mass_residual), default=math.nan)


class StepRecord(BaseModel):
    """Diagnostics of window V_step, whose newest state sits at time."""

    model_config = ConfigDict(frozen=True)

    step: int
    time: float
    diagnostics: StepDiagnostics


class Trajectory(BaseModel):
    """Result of a run: the entropy trace, snapshots and the final window.

    Attributes:
        model: Model label
        scheme: Scheme label
        alpha: Entropy exponent
        tau: Time step
        records: Row 0 describes the initial window V_0, row k the window V_k
        snapshots: Density snapshots keyed by step
        history: Last completed window
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    model: str
    scheme: str
    alpha: float
    tau: float
    records: list[StepRecord] = Field(default_factory=list)
    snapshots: dict[int, GridState] = Field(default_factory=dict)
    history: History | None = None

    @property
    def steps(self) -> list[StepRecord]:
        """Records produced by one-leg steps (row 0 excluded)."""
        return self.records[1:]

    @property
    def entropies(self) -> list[float]:
        return [r.diagnostics.entropy for r in self.records]

    @property
    def times(self) -> list[float]:
        return [r.time for r in self.records]

    @property
    def final_state(self) -> GridState:
        if self.history is None:
            raise ValueError("Trajectory has no completed window")
        return self.history.latest
