"""Verification studies: convergence rates, entropy decay, scheme catalogue."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import reduce
from typing import Self

import numpy as np
import pandas as pd
from loguru import logger
from pydantic import BaseModel, ConfigDict, model_validator
from scipy import stats

from ..core.config import get_settings
from ..core.exceptions import GridMismatchError, ParameterError, StudyAssertionError
from ..entropy.functionals import relative_entropy
from ..entropy.grid import GridState
from ..integrator.stepper import run
from ..integrator.types import Trajectory
from ..schemes.catalogue import scheme_catalogue
from .problem import ProblemSpec

# Reference step must be this many times finer than the finest tested step
TAU_REF_FACTOR = 8

DIVISIBILITY_TOL = 1e-12

# Relative tolerance of the per-step entropy monotonicity check
MONOTONE_REL_TOL = 1e-8

# E_rel window used for the exponential fit, relative to E_rel at t = 0
DECAY_FIT_LOW = 1e-10
DECAY_FIT_HIGH = 0.5


def l2_error(v: GridState, v_ref: GridState) -> float:
    """Grid-weighted l2 norm of v - v_ref over nodes and species.

    Raises:
        GridMismatchError: If the states live on different grids.
    """
    if not v.same_grid(v_ref):
        raise GridMismatchError(f"Cannot compare shapes {v.values.shape} and {v_ref.values.shape}")
    return float(np.sqrt(np.sum((v.values - v_ref.values) ** 2) * v.grid_h))


def _fit(x: list[float], y: list[float]) -> tuple[float, float]:
    result = stats.linregress(x, y)
    return float(result.slope), float(result.rvalue**2)


# ---------------------------------------------------------------------------
# Convergence
# ---------------------------------------------------------------------------


class ConvergenceReport(BaseModel):
    """Errors at t_m against a fine-step reference and the fitted order.

    Attributes:
        taus: Step sizes, strictly decreasing
        errors: l2 errors in the entropy variable at t_m
        rate: Least-squares slope of log(error) against log(tau)
        r_squared: Coefficient of determination of that fit
        tau_ref: Reference step size
        t_m: Comparison time actually used
    """

    model_config = ConfigDict(frozen=True)

    taus: tuple[float, ...]
    errors: tuple[float, ...]
    rate: float
    r_squared: float
    tau_ref: float
    t_m: float

    @model_validator(mode="after")
    def validate_series(self) -> Self:
        """Strictly decreasing taus and positive errors."""
        if any(a <= b for a, b in zip(self.taus, self.taus[1:], strict=False)):
            raise ValueError("taus must be strictly decreasing")
        if any(not e > 0 for e in self.errors):
            raise ValueError("errors must be positive")
        return self

    def assert_rate(self, low: float, high: float) -> None:
        """Raise StudyAssertionError unless low <= rate <= high."""
        if not low <= self.rate <= high:
            raise StudyAssertionError(
                f"Convergence rate {self.rate:.4f} outside [{low}, {high}]",
                context={"rate": self.rate, "r_squared": self.r_squared},
            )


def _as_fraction(x: float) -> Fraction:
    return Fraction(x).limit_denominator(10**12)


def _is_multiple(t: float, tau: float) -> bool:
    ratio = t / tau
    return abs(ratio - round(ratio)) <= DIVISIBILITY_TOL * max(ratio, 1.0)


def comparison_time(taus: list[float], tau_ref: float, t_m: float) -> float:
    """t_m if every step divides it, otherwise the largest common multiple below it.

    Raises:
        ParameterError: If no common multiple fits below t_m.
    """
    steps = [*taus, tau_ref]
    if all(_is_multiple(t_m, tau) for tau in steps):
        return t_m

    fracs = [_as_fraction(tau) for tau in steps]
    period = Fraction(
        reduce(math.lcm, (f.numerator for f in fracs)),
        reduce(math.gcd, (f.denominator for f in fracs)),
    )
    snapped = math.floor(_as_fraction(t_m) / period) * period
    if snapped <= 0:
        raise ParameterError(
            f"No common multiple of the step sizes fits below t_m={t_m}",
            context={"t_m": t_m, "period": float(period)},
        )
    logger.warning(f"t_m={t_m:g} is not a multiple of every tau; using {float(snapped):g}")
    return float(snapped)


def _final_state(spec: ProblemSpec) -> GridState:
    return run(spec).final_state


def convergence_study(base: ProblemSpec, taus: list[float], tau_ref: float, t_m: float) -> ConvergenceReport:
    """Empirical order of the time discretization at fixed grid.

    Every tau and the reference step are run to the same time t_m; the
    l2 errors against the reference are fitted on a log-log scale. With
    ONELEG_MAX_WORKERS > 1 the runs execute in a process pool.

    Raises:
        ParameterError: If the taus repeat or tau_ref is not fine enough.
        RunAbortedError: If any run fails (its tau is in the context).
    """
    ordered = sorted(taus, reverse=True)
    if len(set(ordered)) != len(ordered) or len(ordered) < 2:
        raise ParameterError(f"Need at least two distinct taus, got {taus}")
    if tau_ref > ordered[-1] / TAU_REF_FACTOR:
        raise ParameterError(
            f"tau_ref={tau_ref:g} must be <= min(taus)/{TAU_REF_FACTOR} = {ordered[-1] / TAU_REF_FACTOR:g}",
            context={"tau_ref": tau_ref},
        )
    t_eff = comparison_time(ordered, tau_ref, t_m)

    specs = [base.model_copy(update={"tau": tau, "t_final": t_eff}) for tau in [*ordered, tau_ref]]
    workers = get_settings().max_workers
    logger.info(f"Convergence study: {len(ordered)} step sizes + reference, t_m={t_eff:g}, workers={workers}")
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            finals = list(pool.map(_final_state, specs))
    else:
        finals = [_final_state(spec) for spec in specs]

    reference = finals[-1]
    errors = [l2_error(v, reference) for v in finals[:-1]]
    for tau, err in zip(ordered, errors, strict=True):
        logger.info(f"tau={tau:g}: error={err:.6e}")
    if any(not e > 0 for e in errors):
        raise StudyAssertionError("A run matched the reference exactly; no rate can be fitted")

    rate, r_squared = _fit([math.log(t) for t in ordered], [math.log(e) for e in errors])
    logger.info(f"Fitted rate {rate:.4f} (R^2 = {r_squared:.6f})")
    return ConvergenceReport(
        taus=tuple(ordered), errors=tuple(errors), rate=rate, r_squared=r_squared, tau_ref=tau_ref, t_m=t_eff
    )


def log_rate_ordering(reports: dict[float, ConvergenceReport]) -> bool | None:
    """Log whether alpha = 2 converges at least as fast as alpha = 3/2.

    Returns:
        The ordering, or None when either alpha is missing from reports.
    """
    for alpha, report in sorted(reports.items()):
        logger.info(f"alpha={alpha:g}: rate {report.rate:.4f} (R^2 = {report.r_squared:.6f})")
    if 2.0 not in reports or 1.5 not in reports:
        return None
    rate_two, rate_mid = reports[2.0].rate, reports[1.5].rate
    if rate_two >= rate_mid:
        logger.info(f"Rate ordering holds: alpha=2 ({rate_two:.4f}) >= alpha=1.5 ({rate_mid:.4f})")
        return True
    logger.warning(f"Rate ordering violated: alpha=2 ({rate_two:.4f}) < alpha=1.5 ({rate_mid:.4f})")
    return False


def alpha_sweep_study(
    base: ProblemSpec, alphas: list[float], taus: list[float], tau_ref: float, t_m: float
) -> dict[float, ConvergenceReport]:
    """convergence_study once per entropy exponent, then log the rate ordering.

    alpha <= 1 is run in experimental mode.
    """
    reports = {}
    for alpha in alphas:
        data = {**base.model_dump(), "alpha": alpha, "experimental": base.experimental or alpha <= 1.0}
        reports[alpha] = convergence_study(ProblemSpec.model_validate(data), taus, tau_ref, t_m)
    log_rate_ordering(reports)
    return reports


# ---------------------------------------------------------------------------
# Entropy decay
# ---------------------------------------------------------------------------


class EntropyDecayReport(BaseModel):
    """Relative entropy trace and its exponential fit.

    Attributes:
        h_star: Stationary entropy estimate
        e_rel: H - h_star per record
        slope: Slope of log(E_rel) against t over the fit window (nan if
            fewer than three points qualify)
        r_squared: Fit quality
        monotone: H never increased by more than the relative tolerance
        analysis_backed: Monotonicity is guaranteed by the theory here
    """

    model_config = ConfigDict(frozen=True)

    h_star: float
    e_rel: tuple[float, ...]
    slope: float
    r_squared: float
    monotone: bool
    analysis_backed: bool

    def check(self) -> None:
        """Raise StudyAssertionError for non-monotone, analysis-backed runs."""
        if self.monotone:
            return
        if self.analysis_backed:
            raise StudyAssertionError("Discrete entropy increased in an analysis-backed configuration")
        logger.warning("Discrete entropy is not monotone (configuration outside the analysis)")


def stationary_entropy(entropies: list[float]) -> float:
    """H of the final window, or the trajectory minimum if that is smaller."""
    h_final = entropies[-1]
    h_min = min(entropies)
    if h_min < h_final:
        logger.warning(f"Final entropy {h_final:.12g} exceeds trajectory minimum {h_min:.12g}; using the minimum")
        return h_min
    return h_final


def is_monotone(entropies: list[float]) -> bool:
    return all(b - a <= MONOTONE_REL_TOL * abs(a) for a, b in zip(entropies, entropies[1:], strict=False))


def entropy_decay_study(spec: ProblemSpec) -> tuple[Trajectory, EntropyDecayReport]:
    """Run to t_final and fit the exponential decay of the relative entropy."""
    traj = run(spec)
    entropies = traj.entropies
    h_star = stationary_entropy(entropies)
    e_rel = [relative_entropy(h, h_star) for h in entropies]

    e0 = e_rel[0]
    low, high = DECAY_FIT_LOW * e0, DECAY_FIT_HIGH * e0
    window = [(t, e) for t, e in zip(traj.times, e_rel, strict=True) if low <= e <= high and e > 0]
    if len(window) >= 3:
        slope, r_squared = _fit([t for t, _ in window], [math.log(e) for _, e in window])
        logger.info(f"Relative entropy decays like exp({slope:.4g} t), R^2 = {r_squared:.6f}")
    else:
        slope, r_squared = math.nan, math.nan
        logger.warning(f"Only {len(window)} points in the fit window; no decay rate")

    monotone = is_monotone(entropies)
    if not monotone:
        logger.warning(f"Entropy not monotone for {spec.run_label}")
    return traj, EntropyDecayReport(
        h_star=h_star,
        e_rel=tuple(e_rel),
        slope=slope,
        r_squared=r_squared,
        monotone=monotone,
        analysis_backed=spec.build_model().analysis_backed,
    )


# ---------------------------------------------------------------------------
# Scheme catalogue
# ---------------------------------------------------------------------------


def scheme_report() -> pd.DataFrame:
    """Scheme catalogue as a table, one row per scheme."""
    return pd.DataFrame([row.model_dump() for row in scheme_catalogue()])
