"""Unit tests for the exception hierarchy, settings and logging setup."""

from __future__ import annotations

import math
import sys
from pathlib import Path

import pytest
from loguru import logger

from oneleg.core import config
from oneleg.core.config import get_settings
from oneleg.core.exceptions import (
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
from oneleg.core.logging import setup_logging
from oneleg.integrator import Trajectory

# All tests in this module are unit tests (monkeypatched env, tmp_path for log files)
pytestmark = pytest.mark.unit


class TestExceptionMetadata:
    """Exit codes, error codes and log levels."""

    @pytest.mark.parametrize(
        ("exc_type", "exit_code", "error_code"),
        [
            (ParameterError, 2, "INVALID_PARAMETER"),
            (ConfigError, 2, "CONFIG_INVALID"),
            (GridMismatchError, 2, "GRID_MISMATCH"),
            (GStabilityViolationError, 2, "G_STABILITY_VIOLATION"),
            (DomainError, 3, "DOMAIN_ERROR"),
            (PositivityError, 3, "POSITIVITY_VIOLATION"),
            (SolverError, 3, "SOLVER_FAILED"),
            (NonconvergenceError, 3, "NEWTON_NONCONVERGENCE"),
            (PositivityTrapError, 3, "POSITIVITY_TRAP"),
            (JacobianError, 3, "SINGULAR_JACOBIAN"),
            (RunAbortedError, 3, "RUN_ABORTED"),
            (StudyAssertionError, 4, "STUDY_ASSERTION_FAILED"),
        ],
    )
    def test_codes(self, exc_type: type[OnelegError], exit_code: int, error_code: str) -> None:
        """Each type declares its exit code and stable error code."""
        err = exc_type("boom")
        assert isinstance(err, OnelegError)
        assert err.exit_code == exit_code
        assert err.error_code == error_code

    def test_positivity_logs_at_debug(self) -> None:
        """Positivity violations are routine inside Newton damping."""
        assert PositivityError().log_level == "debug"
        assert ParameterError().log_level == "warning"
        assert SolverError().log_level == "error"

    def test_to_dict_merges_context(self) -> None:
        """to_dict carries code, message and context."""
        err = ConfigError("bad field", context={"errors": 2})
        assert err.to_dict() == {"error_code": "CONFIG_INVALID", "message": "bad field", "errors": 2}

    def test_context_defaults_to_empty(self) -> None:
        """No context gives an empty dict, not a shared one."""
        a, b = OnelegError(), OnelegError()
        a.context["x"] = 1
        assert b.context == {}

    def test_nonconvergence_residual(self) -> None:
        """The final residual norm is an attribute and in the context."""
        err = NonconvergenceError("stuck", residual_norm=1e-3, context={"iters": 50})
        assert err.residual_norm == 1e-3
        assert err.context == {"residual_norm": 1e-3, "iters": 50}
        assert math.isnan(NonconvergenceError().residual_norm)

    def test_run_aborted_carries_trajectory(self) -> None:
        """The partial trajectory travels with the error."""
        traj = Trajectory(model="skt", scheme="bdf2", alpha=1.5, tau=1e-5)
        err = RunAbortedError("step 3 failed", trajectory=traj, context={"step": 3})
        assert err.trajectory is traj
        assert err.context["step"] == 3
        assert isinstance(err, SolverError)


class TestSettings:
    """Environment-driven settings."""

    def test_defaults(self) -> None:
        """Defaults without any ONELEG_ variables."""
        s = get_settings()
        assert s.log_level == "INFO"
        assert s.max_workers == 1
        assert s.csv_float_format == "%.17g"
        assert s.newton_max_iters == 50

    def test_env_prefix(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """ONELEG_-prefixed variables override defaults after a cache clear."""
        monkeypatch.setenv("ONELEG_MAX_WORKERS", "4")
        monkeypatch.setenv("ONELEG_NEWTON_TOL_RESIDUAL", "1e-12")
        get_settings.cache_clear()
        s = get_settings()
        assert s.max_workers == 4
        assert s.newton_tol_residual == 1e-12

    def test_rejects_invalid(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Zero workers fail validation."""
        monkeypatch.setenv("ONELEG_MAX_WORKERS", "0")
        get_settings.cache_clear()
        with pytest.raises(ValueError):
            get_settings()


class TestSetupLogging:
    """loguru configuration."""

    @pytest.fixture(autouse=True)
    def _restore_sinks(self):
        yield
        logger.remove()
        logger.add(sys.stderr, level="INFO")

    def test_run_id_defaults_outside_runs(self) -> None:
        """Records emitted outside a run get run_id '-'."""
        setup_logging("DEBUG")
        seen: list[str] = []
        logger.add(lambda msg: seen.append(msg.record["extra"]["run_id"]), level="DEBUG")
        logger.info("outside")
        with logger.contextualize(run_id="skt-b/bdf2/1e-05"):
            logger.info("inside")
        assert seen == ["-", "skt-b/bdf2/1e-05"]

    def test_file_sink_when_log_dir_set(self, monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
        """ONELEG_LOG_DIR adds a rotating file sink."""
        monkeypatch.setenv("ONELEG_LOG_DIR", str(tmp_path))
        get_settings.cache_clear()
        config.settings = get_settings()
        setup_logging("INFO")
        logger.info("to file")
        logger.complete()
        logger.remove()
        files = list(tmp_path.glob("oneleg_*.log"))
        assert len(files) == 1
        assert "to file" in files[0].read_text(encoding="utf-8")
