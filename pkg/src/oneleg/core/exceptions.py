"""Custom exceptions for oneleg.

Domain exceptions carry a CLI exit code, a stable error code, and safe
context for centralized handling in the command-line layer.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Any, Literal

if TYPE_CHECKING:
    from ..integrator.types import Trajectory

LogLevel = Literal["debug", "info", "warning", "error"]


class OnelegError(Exception):
    """Base domain exception with exit-code metadata.

    All domain exceptions inherit from this class and are handled by a
    single handler in the CLI.

    Attributes:
        exit_code: Process exit code used by the CLI.
        error_code: Stable string code for logs and scripts (e.g., "POSITIVITY_TRAP").
        log_level: Severity level for logging this exception type.
        context: Additional metadata for logging (step index, tau, residual norm, ...).
    """

    exit_code: int = 1
    error_code: str = "INTERNAL_ERROR"
    log_level: LogLevel = "error"

    def __init__(self, message: str = "", context: dict[str, Any] | None = None):
        super().__init__(message)
        self.context = context or {}

    def to_dict(self) -> dict[str, Any]:
        """Structured representation for logging."""
        return {
            "error_code": self.error_code,
            "message": str(self),
            **self.context,
        }


# =============================================================================
# Parameter and Configuration Errors
# =============================================================================


class ParameterError(OnelegError):
    """A parameter is outside its admissible range.

    Raised when:
    - gamma is outside (0, 1]
    - a G-matrix is not symmetric positive definite
    - grid sizes or step sizes are invalid
    """

    exit_code = 2
    error_code = "INVALID_PARAMETER"
    log_level: LogLevel = "warning"


class ConfigError(ParameterError):
    """Problem configuration file or override could not be validated."""

    error_code = "CONFIG_INVALID"


class GridMismatchError(ParameterError):
    """States, windows, or matrices do not share dimensions."""

    error_code = "GRID_MISMATCH"


class GStabilityViolationError(ParameterError):
    """Scheme parameters outside the G-stable region (e.g. beta2 <= alpha2/2)."""

    error_code = "G_STABILITY_VIOLATION"


# =============================================================================
# Numerical Domain Errors
# =============================================================================


class DomainError(OnelegError):
    """Input outside the mathematical domain (e.g. negative densities)."""

    exit_code = 3
    error_code = "DOMAIN_ERROR"
    log_level: LogLevel = "warning"


class PositivityError(DomainError):
    """sigma(E)v is not strictly positive at some node.

    Raised by residual evaluations; the Newton solver catches it and damps.
    """

    error_code = "POSITIVITY_VIOLATION"
    log_level: LogLevel = "debug"


# =============================================================================
# Solver Errors
# =============================================================================


class SolverError(OnelegError):
    """Base class for failures of the nonlinear solve."""

    exit_code = 3
    error_code = "SOLVER_FAILED"


class NonconvergenceError(SolverError):
    """Newton reached max_iters without meeting the residual tolerance."""

    error_code = "NEWTON_NONCONVERGENCE"

    def __init__(self, message: str = "", residual_norm: float = float("nan"), context: dict[str, Any] | None = None):
        super().__init__(message, context={"residual_norm": residual_norm, **(context or {})})
        self.residual_norm = residual_norm


class PositivityTrapError(SolverError):
    """Step halving exhausted without a positive, non-increasing iterate."""

    error_code = "POSITIVITY_TRAP"


class JacobianError(SolverError):
    """The Newton linear system could not be solved (singular Jacobian)."""

    error_code = "SINGULAR_JACOBIAN"


class RunAbortedError(SolverError):
    """A time step failed; carries the trajectory computed up to the failure."""

    error_code = "RUN_ABORTED"

    def __init__(
        self,
        message: str = "",
        trajectory: Trajectory | None = None,
        context: dict[str, Any] | None = None,
    ):
        super().__init__(message, context=context)
        self.trajectory = trajectory


# =============================================================================
# Study Errors
# =============================================================================


class StudyAssertionError(OnelegError):
    """A verification study found a property violated (rate, monotonicity)."""

    exit_code = 4
    error_code = "STUDY_ASSERTION_FAILED"
