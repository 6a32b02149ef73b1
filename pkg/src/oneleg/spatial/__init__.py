"""Periodic finite-difference discretizations of the SKT and DLSS models."""

from .dlss import (
    DlssConfig,
    banded_fd_jacobian,
    dlss_initial_data,
    dlss_jacobian,
    dlss_operator,
    dlss_residual,
    colour_count,
)
from .models import DlssModel, SktModel, SpatialModel
from .skt import (
    SktParams,
    skt_initial_data,
    skt_initial_densities,
    skt_jacobian,
    skt_residual,
    skt_spatial_part,
)
from .stencils import second_difference, second_difference_matrix

__all__ = [
    # Stencils
    "second_difference",
    "second_difference_matrix",
    # SKT
    "SktParams",
    "skt_residual",
    "skt_spatial_part",
    "skt_jacobian",
    "skt_initial_data",
    "skt_initial_densities",
    # DLSS
    "DlssConfig",
    "dlss_operator",
    "dlss_residual",
    "dlss_jacobian",
    "banded_fd_jacobian",
    "colour_count",
    "dlss_initial_data",
    # Models
    "SpatialModel",
    "SktModel",
    "DlssModel",
]
