"""oneleg - entropy-dissipative one-leg multistep schemes for nonlinear diffusion.

The package combines G-stable one-leg time discretizations with the
square-root variable transformation v = u^{alpha/2}, so the discrete entropy
H[V_k] is nonincreasing. Two periodic 1-D models are provided: the SKT
cross-diffusion population system and the fourth-order DLSS equation.

Quick Start:
    >>> from oneleg import bdf2, scheme_g_matrix, verify_g_stability
    >>> verify_g_stability(bdf2(), [[0.5, -1.0], [-1.0, 2.5]]).certified
    True
    >>>
    >>> from oneleg import ProblemSpec, run
    >>> spec = ProblemSpec(model="skt-b", alpha=1.5, N=100, tau=1e-5, t_final=1e-3)
    >>> traj = run(spec)
    >>> traj.entropies[-1] <= traj.entropies[0]
    True

Environment Variables:
    ONELEG_LOG_LEVEL: Logging level (default: INFO)
    ONELEG_LOG_DIR: Directory for rotating log files (default: unset)
    ONELEG_MAX_WORKERS: Process pool size for tau sweeps (default: 1)
    ONELEG_CSV_FLOAT_FORMAT: Float format of CSV output (default: %.17g)
    ONELEG_NEWTON_TOL_RESIDUAL / _MAX_ITERS / _MAX_HALVINGS: Newton defaults
"""

from importlib.metadata import PackageNotFoundError, version

# Get version from package metadata (set in pyproject.toml)
try:
    __version__ = version("oneleg")
except PackageNotFoundError:
    __version__ = "0.0.0.dev"

# Core
from .core import (
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
    Settings,
    SolverError,
    StudyAssertionError,
    logger,
    settings,
    setup_logging,
)

# Entropy
from .entropy import (
    EntropyConfig,
    GridState,
    History,
    apply_rho,
    apply_sigma,
    discrete_entropy,
    dlss_entropy_production,
    reconstruct_w,
    relative_entropy,
    skt_entropy_production,
    to_entropy_var,
)

# Harness
from .harness import (
    ConvergenceReport,
    EntropyDecayReport,
    ProblemSpec,
    convergence_study,
    entropy_decay_study,
    l2_error,
    load_problem_spec,
    scheme_report,
)

# Integrator
from .integrator import (
    NewtonOptions,
    StepDiagnostics,
    Trajectory,
    euler_startup,
    newton_solve,
    run,
    step,
)

# Schemes
from .schemes import (
    GMatrix,
    OrderReport,
    SchemeCoefficients,
    bdf2,
    check_order,
    family_g_matrix,
    family_scheme,
    g_norm_sq,
    gamma_method,
    implicit_euler,
    implicit_midpoint,
    scheme_g_matrix,
    verify_g_stability,
)

# Spatial models
from .spatial import (
    DlssConfig,
    DlssModel,
    SktModel,
    SktParams,
    dlss_jacobian,
    dlss_residual,
    skt_initial_data,
    skt_jacobian,
    skt_residual,
)

__all__ = [
    "__version__",
    # Core
    "Settings",
    "settings",
    "logger",
    "setup_logging",
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
    # Schemes
    "SchemeCoefficients",
    "OrderReport",
    "GMatrix",
    "bdf2",
    "gamma_method",
    "implicit_midpoint",
    "implicit_euler",
    "family_scheme",
    "check_order",
    "family_g_matrix",
    "verify_g_stability",
    "scheme_g_matrix",
    "g_norm_sq",
    # Entropy
    "EntropyConfig",
    "GridState",
    "History",
    "to_entropy_var",
    "reconstruct_w",
    "apply_sigma",
    "apply_rho",
    "discrete_entropy",
    "relative_entropy",
    "skt_entropy_production",
    "dlss_entropy_production",
    # Spatial models
    "SktParams",
    "SktModel",
    "DlssConfig",
    "DlssModel",
    "skt_residual",
    "skt_jacobian",
    "skt_initial_data",
    "dlss_residual",
    "dlss_jacobian",
    # Integrator
    "NewtonOptions",
    "StepDiagnostics",
    "Trajectory",
    "newton_solve",
    "euler_startup",
    "step",
    "run",
    # Harness
    "ProblemSpec",
    "ConvergenceReport",
    "EntropyDecayReport",
    "load_problem_spec",
    "l2_error",
    "convergence_study",
    "entropy_decay_study",
    "scheme_report",
]
