"""Core infrastructure for oneleg."""

from .config import Settings, get_settings, settings
from .exceptions import (
    ConfigError,
    DomainError,
    GridMismatchError,
    GStabilityViolationError,
    JacobianError,
    NonconvergenceError,
    OnelegError,
    ParameterError,
    PositivityError,
    PositivityTrapError,
    RunAbortedError,
    SolverError,
    StudyAssertionError,
)
from .logging import logger, setup_logging

__all__ = [
    # Configuration
    "Settings",
    "settings",
    "get_settings",
    # Exceptions
    "OnelegError",
    "ParameterError",
    "ConfigError",
    "GridMismatchError",
    "GStabilityViolationError",
    "DomainError",
    "PositivityError",
    "SolverError",
    "NonconvergenceError",
    "PositivityTrapError",
    "JacobianError",
    "RunAbortedError",
    "StudyAssertionError",
    # Logging
    "logger",
    "setup_logging",
]
