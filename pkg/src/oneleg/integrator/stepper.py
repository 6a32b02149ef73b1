"""One-leg time stepping: Euler startup, single steps, and full runs."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np
import scipy.sparse as sp
from loguru import logger
from numpy.typing import NDArray

from ..core.exceptions import DomainError, PositivityError, RunAbortedError, SolverError
from ..entropy.functionals import discrete_entropy
from ..entropy.grid import GridState, History
from ..entropy.transform import apply_sigma, reconstruct_w, to_entropy_var, weighted_mass_residual
from ..schemes.coefficients import SchemeCoefficients, implicit_euler
from ..schemes.gstability import scheme_g_matrix
from .newton import newton_solve
from .types import NewtonOptions, StepDiagnostics, StepRecord, Trajectory

if TYPE_CHECKING:
    from ..harness.problem import ProblemSpec
    from ..spatial.models import SpatialModel

# Relative slack of the logged dissipation-rate check
DISSIPATION_RATE_SLACK = 1e-6


def _guesses(hist: History) -> list[GridState]:
    if hist.p == 2:
        v_prev, v_last = hist.states
        return [GridState(values=2.0 * v_last.values - v_prev.values), v_last]
    return [hist.latest]


def step(
    hist: History,
    s: SchemeCoefficients,
    model: SpatialModel,
    tau: float,
    opts: NewtonOptions | None = None,
) -> tuple[GridState, StepDiagnostics]:
    """Advance the window by one step, solving for v_{k+p}.

    The Newton guess is the linear extrapolation 2 v_{k+1} - v_k for p = 2
    and v_k for p = 1. If the residual cannot be evaluated there the latest
    state is used instead.

    Returns:
        Tuple of (v_{k+p}, diagnostics of the shifted window).

    Raises:
        SolverError: Propagated from newton_solve.
        PositivityError: If no guess yields a positive sigma(E)v.
    """
    opts = opts or NewtonOptions()
    n_species = hist.n_species

    def residual_fn(x: NDArray[np.float64]) -> NDArray[np.float64]:
        return model.residual(hist, GridState.from_flat(x, n_species), s, tau)

    def jacobian_fn(x: NDArray[np.float64]) -> sp.spmatrix:
        return model.jacobian(hist, GridState.from_flat(x, n_species), s, tau)

    guesses = _guesses(hist)
    for i, guess in enumerate(guesses):
        try:
            v_new, diag = newton_solve(residual_fn, jacobian_fn, guess, opts)
            break
        except PositivityError:
            if i == len(guesses) - 1:
                raise
            logger.debug("Extrapolated guess not admissible, falling back to the latest state")

    sigma = apply_sigma(s, hist, v_new)
    w = reconstruct_w(sigma, model.alpha)
    diag = diag.model_copy(
        update={
            "entropy": discrete_entropy(scheme_g_matrix(s), hist.shifted(v_new)),
            "entropy_production": model.production(w),
            "mass_residual": tuple(float(m) for m in weighted_mass_residual(s, hist, v_new, model.alpha)),
            "min_sigma_v": float(sigma.values.min()),
            "min_w": float(w.values.min()),
        }
    )
    return v_new, diag


def euler_startup(
    v0: GridState, model: SpatialModel, tau: float, opts: NewtonOptions | None = None
) -> tuple[GridState, StepDiagnostics]:
    """Compute v_1 from v_0 with one implicit Euler step."""
    return step(History(states=(v0,)), implicit_euler(), model, tau, opts)


def _initial_diagnostics(
    hist: History, s: SchemeCoefficients, model: SpatialModel, startup: StepDiagnostics | None
) -> StepDiagnostics:
    w = reconstruct_w(hist.latest, model.alpha)
    base = startup or StepDiagnostics(mass_residual=(0.0,) * hist.n_species)
    return base.model_copy(
        update={
            "entropy": discrete_entropy(scheme_g_matrix(s), hist),
            "entropy_production": model.production(w),
            "min_sigma_v": float(hist.latest.values.min()),
            "min_w": float(w.values.min()),
        }
    )


def snapshot_density(s: SchemeCoefficients, hist: History, v_new: GridState, alpha: float) -> GridState:
    """Density w of the blended state sigma(E)v for the step hist -> v_new.

    Only sigma(E)v is kept positive by the solver; v_new itself may have
    nonpositive nodes for schemes with more than one nonzero beta. For
    BDF2 and implicit Euler this is the density of v_new.
    """
    return reconstruct_w(apply_sigma(s, hist, v_new), alpha)


def run(spec: ProblemSpec, n_steps: int | None = None) -> Trajectory:
    """Integrate a problem from its initial data.

    p = 2 schemes first take an implicit Euler step to complete V_0. Then
    n_steps one-leg steps follow (default: enough to reach t_final). Record
    k holds the diagnostics of V_k at time t_{k+p-1}.

    Raises:
        GStabilityViolationError: If the scheme has no certified G-matrix.
        RunAbortedError: If a step fails; carries the partial trajectory.
    """
    model = spec.build_model()
    s = spec.build_scheme()
    tau = spec.tau
    opts = spec.newton
    total = spec.n_steps if n_steps is None else n_steps
    # Fails fast for schemes without a certified G
    scheme_g_matrix(s)

    traj = Trajectory(model=model.name, scheme=s.name, alpha=model.alpha, tau=tau)
    with logger.contextualize(run_id=spec.run_label):
        logger.info(f"Starting {model.name} run: scheme={s.name}, alpha={model.alpha:g}, tau={tau:g}, steps={total}")

        v0 = to_entropy_var(spec.initial_densities(), model.alpha)
        startup = None
        hist = History(states=(v0,))
        try:
            if s.p == 2:
                v1, startup = euler_startup(v0, model, tau, opts)
                hist = History(states=(v0, v1))
        except (SolverError, DomainError) as e:
            raise RunAbortedError(f"Euler startup failed: {e}", trajectory=traj, context={"step": 0, "tau": tau}) from e

        t0 = (s.p - 1) * tau
        traj.records.append(StepRecord(step=0, time=t0, diagnostics=_initial_diagnostics(hist, s, model, startup)))
        traj.history = hist
        if spec.snapshot_every > 0:
            traj.snapshots[0] = reconstruct_w(hist.latest, model.alpha)

        h_prev = traj.records[0].diagnostics.entropy
        rate_misses = 0
        for k in range(1, total + 1):
            try:
                v_new, diag = step(hist, s, model, tau, opts)
            except (SolverError, DomainError) as e:
                logger.error(f"Step {k} failed: {e}")
                raise RunAbortedError(
                    f"Step {k} failed: {e}",
                    trajectory=traj,
                    context={"step": k, "tau": tau, **e.context},
                ) from e

            if spec.snapshot_every > 0 and k % spec.snapshot_every == 0:
                traj.snapshots[k] = snapshot_density(s, hist, v_new, model.alpha)
            hist = hist.shifted(v_new)
            traj.history = hist
            traj.records.append(StepRecord(step=k, time=(k + s.p - 1) * tau, diagnostics=diag))

            if model.name == "skt" and diag.entropy + tau * diag.entropy_production > (
                h_prev + DISSIPATION_RATE_SLACK * abs(h_prev)
            ):
                rate_misses += 1
                logger.debug(f"Step {k}: dissipation-rate check not met (H={diag.entropy:.12g}, H_prev={h_prev:.12g})")
            logger.debug(f"Step {k}: H={diag.entropy:.12g}, newton_iters={diag.newton_iters}")
            h_prev = diag.entropy

        if rate_misses:
            logger.warning(f"Dissipation-rate check not met at {rate_misses} of {total} steps")
        logger.info(f"Finished run: {total} steps, H={h_prev:.12g}")
    return traj
