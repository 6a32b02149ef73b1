"""Damped Newton iteration with a positivity safeguard."""

from __future__ import annotations

from collections.abc import Callable

import numpy as np
import scipy.sparse as sp
from loguru import logger
from numpy.typing import NDArray
from scipy.sparse.linalg import splu

from ..core.exceptions import JacobianError, NonconvergenceError, PositivityError, PositivityTrapError
from ..entropy.grid import GridState
from .types import NewtonOptions, StepDiagnostics

ResidualFn = Callable[[NDArray[np.float64]], NDArray[np.float64]]
JacobianFn = Callable[[NDArray[np.float64]], sp.spmatrix]


def _solve_linear(jac: sp.spmatrix, rhs: NDArray[np.float64]) -> NDArray[np.float64]:
    try:
        dx = splu(sp.csc_matrix(jac)).solve(rhs)
    except RuntimeError as e:
        raise JacobianError(f"Newton linear solve failed: {e}") from e
    if not np.all(np.isfinite(dx)):
        raise JacobianError("Newton update is not finite")
    return dx


def newton_solve(
    residual_fn: ResidualFn,
    jacobian_fn: JacobianFn,
    v_guess: GridState,
    opts: NewtonOptions,
) -> tuple[GridState, StepDiagnostics]:
    """Solve residual_fn(x) = 0 starting from v_guess.

    Functions act on the species-major flat vector. Each update is halved
    until the residual evaluates (no PositivityError) and its max norm does
    not increase.

    Args:
        residual_fn: Residual map.
        jacobian_fn: Sparse Jacobian of residual_fn.
        v_guess: Initial iterate; its residual must evaluate.
        opts: Tolerance and iteration limits.

    Returns:
        Tuple of (solution, diagnostics with newton_iters and residual_norm).

    Raises:
        PositivityError: If the residual cannot be evaluated at v_guess.
        NonconvergenceError: If max_iters is reached above tolerance.
        PositivityTrapError: If max_halvings is exhausted.
        JacobianError: If the linear system cannot be solved.
    """
    x = v_guess.flat.copy()
    r = residual_fn(x)
    norm = float(np.max(np.abs(r)))

    iters = 0
    while norm > opts.tol_residual:
        if iters == opts.max_iters:
            raise NonconvergenceError(
                f"Newton did not converge in {opts.max_iters} iterations (residual {norm:.3e})",
                residual_norm=norm,
                context={"max_iters": opts.max_iters},
            )
        dx = _solve_linear(jacobian_fn(x), -r)

        lam = 1.0
        for _ in range(opts.max_halvings + 1):
            x_try = x + lam * dx
            try:
                r_try = residual_fn(x_try)
            except PositivityError:
                lam *= 0.5
                continue
            norm_try = float(np.max(np.abs(r_try)))
            if norm_try <= norm or norm_try <= opts.tol_residual:
                break
            lam *= 0.5
        else:
            raise PositivityTrapError(
                f"No admissible Newton step after {opts.max_halvings} halvings (residual {norm:.3e})",
                context={"residual_norm": norm, "iteration": iters},
            )

        x, r, norm = x_try, r_try, norm_try
        iters += 1
        logger.debug(f"Newton iter {iters}: residual {norm:.3e}, damping {lam:g}")

    return GridState.from_flat(x, v_guess.n_species), StepDiagnostics(newton_iters=iters, residual_norm=norm)
