"""One-leg multistep schemes and G-stability certification."""

from .catalogue import CatalogueRow, scheme_catalogue
from .coefficients import (
    OrderReport,
    SchemeCoefficients,
    bdf2,
    check_order,
    family_parameters,
    family_scheme,
    gamma_method,
    implicit_euler,
    implicit_midpoint,
)
from .gstability import (
    GMatrix,
    GStabilityCertificate,
    family_g_matrix,
    g_norm_sq,
    remainder_matrix,
    scheme_g_matrix,
    verify_g_stability,
)

__all__ = [
    # Coefficients
    "SchemeCoefficients",
    "OrderReport",
    "bdf2",
    "gamma_method",
    "implicit_midpoint",
    "implicit_euler",
    "family_scheme",
    "family_parameters",
    "check_order",
    # G-stability
    "GMatrix",
    "GStabilityCertificate",
    "family_g_matrix",
    "remainder_matrix",
    "verify_g_stability",
    "scheme_g_matrix",
    "g_norm_sq",
    # Catalogue
    "CatalogueRow",
    "scheme_catalogue",
]
