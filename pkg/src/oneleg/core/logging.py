"""Centralized logging configuration for oneleg."""

from __future__ import annotations

import sys
from pathlib import Path

from loguru import logger

from . import config


def _patcher(record: dict) -> None:
    """Ensure run_id exists in extra for all log records.

    This handles logs emitted outside a simulation context (CLI parsing,
    scheme catalogue, study assembly).
    """
    if "run_id" not in record["extra"]:
        record["extra"]["run_id"] = "-"


def setup_logging(level: str | None = None) -> None:
    """Configure loguru for the library and CLI.

    Sets up:
    - Console logging with colorized output (includes the run id when available)
    - File logging with size rotation when ONELEG_LOG_DIR is set

    Args:
        level: Overrides the configured ONELEG_LOG_LEVEL when given.
    """
    level = (level or config.settings.log_level).upper()

    # Remove default handler
    logger.remove()

    logger.configure(patcher=_patcher)  # ty: ignore

    # {extra[run_id]} is bound per simulation via logger.contextualize()
    logger.add(
        sys.stderr,
        format=(
            "<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | "
            "<cyan>{extra[run_id]:>14}</cyan> | "
            "<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - "
            "<level>{message}</level>"
        ),
        level=level,
        colorize=True,
    )

    if config.settings.log_dir:
        log_dir = Path(config.settings.log_dir)
        logger.add(
            log_dir / "oneleg_{time:YYYY-MM-DD}.log",
            rotation="50 MB",
            retention="7 days",
            format="{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {extra[run_id]:>14} | {name}:{function}:{line} - {message}",
            level=level,
        )


__all__ = ["logger", "setup_logging"]
