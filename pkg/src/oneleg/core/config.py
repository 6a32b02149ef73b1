"""Centralized configuration for oneleg.

All environment variables use the ONELEG_ prefix to avoid
clashes with other tools on the same system.

Environment Variables:
    ONELEG_LOG_LEVEL: Logging level (default: INFO)
    ONELEG_LOG_DIR: Directory for rotating log files. Unset means stderr only.
    ONELEG_MAX_WORKERS: Worker processes for independent simulations in a
        tau sweep (default: 1, i.e. sequential).
    ONELEG_CSV_FLOAT_FORMAT: printf-style float format for CSV output
        (default: %.17g, which round-trips binary64 exactly).
    ONELEG_NEWTON_TOL_RESIDUAL: Default max-norm residual tolerance (default: 1e-10)
    ONELEG_NEWTON_MAX_ITERS: Default Newton iteration cap (default: 50)
    ONELEG_NEWTON_MAX_HALVINGS: Default step-halving cap per iteration (default: 30)

Problem-specific parameters (model, scheme, grid, time step) are not
settings; they live in the ProblemSpec config file, see harness.problem.
"""

from __future__ import annotations

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Process-wide settings loaded from environment variables.

    Uses pydantic-settings for environment loading, type coercion, and
    validation.
    """

    model_config = SettingsConfigDict(
        env_prefix="ONELEG_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Logging configuration
    log_level: str = "INFO"
    log_dir: str | None = None

    # Parallel tau sweeps (1 = run sequentially in-process)
    max_workers: int = Field(default=1, ge=1)

    # Output formatting
    csv_float_format: str = "%.17g"

    # Newton defaults, used when a ProblemSpec does not set them
    newton_tol_residual: float = Field(default=1e-10, gt=0)
    newton_max_iters: int = Field(default=50, ge=1)
    newton_max_halvings: int = Field(default=30, ge=1)


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance.

    Using lru_cache makes this effectively a singleton while still allowing
    tests to clear the cache and reload from a modified environment.
    """
    return Settings()


# Module-level singleton instance for easy import
settings = get_settings()
