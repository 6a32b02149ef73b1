"""Problem specifications, verification studies and CSV output."""

from .output import trace_frame, write_convergence, write_csv, write_schemes, write_snapshots, write_trace
from .problem import ProblemSpec, SchemeChoice, apply_overrides, load_problem_spec, parse_rational
from .studies import (
    ConvergenceReport,
    EntropyDecayReport,
    alpha_sweep_study,
    comparison_time,
    convergence_study,
    entropy_decay_study,
    is_monotone,
    l2_error,
    log_rate_ordering,
    scheme_report,
    stationary_entropy,
)

__all__ = [
    # Problem
    "ProblemSpec",
    "SchemeChoice",
    "parse_rational",
    "apply_overrides",
    "load_problem_spec",
    # Studies
    "ConvergenceReport",
    "EntropyDecayReport",
    "l2_error",
    "comparison_time",
    "convergence_study",
    "alpha_sweep_study",
    "log_rate_ordering",
    "entropy_decay_study",
    "stationary_entropy",
    "is_monotone",
    "scheme_report",
    # Output
    "write_csv",
    "trace_frame",
    "write_trace",
    "write_snapshots",
    "write_convergence",
    "write_schemes",
]
