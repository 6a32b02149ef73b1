"""Entropy variables, discrete entropy functionals and production diagnostics."""

from .functionals import (
    EntropyConfig,
    discrete_entropy,
    dlss_entropy_production,
    relative_entropy,
    skt_entropy_production,
)
from .grid import GridState, History
from .transform import (
    apply_rho,
    apply_sigma,
    combine,
    reconstruct_w,
    to_entropy_var,
    weighted_mass_residual,
)

__all__ = [
    # Grid
    "GridState",
    "History",
    # Transform
    "to_entropy_var",
    "reconstruct_w",
    "apply_sigma",
    "apply_rho",
    "combine",
    "weighted_mass_residual",
    # Functionals
    "EntropyConfig",
    "discrete_entropy",
    "relative_entropy",
    "skt_entropy_production",
    "dlss_entropy_production",
]
