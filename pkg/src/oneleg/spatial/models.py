"""Spatial models as seen by the integrator.

Each model binds its coefficients and entropy exponent so the stepper can
treat SKT and DLSS uniformly.
"""

from __future__ import annotations

from typing import Protocol, runtime_checkable

import numpy as np
import scipy.sparse as sp
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict

from ..entropy.functionals import dlss_entropy_production, skt_entropy_production
from ..entropy.grid import GridState, History
from ..schemes.coefficients import SchemeCoefficients
from .dlss import dlss_jacobian, dlss_residual
from .skt import SktParams, skt_jacobian, skt_residual


@runtime_checkable
class SpatialModel(Protocol):
    """Residual, Jacobian and production diagnostic of a semidiscrete model.

    Attributes:
        name: Short model label used in logs ("skt", "dlss")
        alpha: Entropy exponent
        n_species: Number of unknown fields
    """

    name: str
    alpha: float

    @property
    def n_species(self) -> int: ...

    def residual(
        self, hist: History, v_new: GridState, s: SchemeCoefficients, tau: float
    ) -> NDArray[np.float64]: ...

    def jacobian(self, hist: History, v_new: GridState, s: SchemeCoefficients, tau: float) -> sp.csc_matrix: ...

    def production(self, w: GridState) -> float: ...

    @property
    def analysis_backed(self) -> bool: ...


class SktModel(BaseModel):
    """Two-species cross-diffusion model."""

    model_config = ConfigDict(frozen=True)

    name: str = "skt"
    alpha: float
    params: SktParams
    printed_exponents: bool = False

    @property
    def n_species(self) -> int:
        return 2

    def residual(self, hist: History, v_new: GridState, s: SchemeCoefficients, tau: float) -> NDArray[np.float64]:
        return skt_residual(hist, v_new, s, self.params, self.alpha, tau, self.printed_exponents)

    def jacobian(self, hist: History, v_new: GridState, s: SchemeCoefficients, tau: float) -> sp.csc_matrix:
        return skt_jacobian(hist, v_new, s, self.params, self.alpha, tau, self.printed_exponents)

    def production(self, w: GridState) -> float:
        return skt_entropy_production(w, self.alpha, self.params.d1, self.params.d2)

    @property
    def analysis_backed(self) -> bool:
        """Entropy decay is guaranteed: 1 < alpha <= 2 and the a1/a2 condition holds."""
        return 1.0 < self.alpha <= 2.0 and self.params.entropy_condition_met and not self.printed_exponents


class DlssModel(BaseModel):
    """Single-species fourth-order quantum diffusion model."""

    model_config = ConfigDict(frozen=True)

    name: str = "dlss"
    alpha: float

    @property
    def n_species(self) -> int:
        return 1

    def residual(self, hist: History, v_new: GridState, s: SchemeCoefficients, tau: float) -> NDArray[np.float64]:
        return dlss_residual(hist, v_new, s, self.alpha, tau)

    def jacobian(self, hist: History, v_new: GridState, s: SchemeCoefficients, tau: float) -> sp.csc_matrix:
        return dlss_jacobian(hist, v_new, s, self.alpha, tau)

    def production(self, w: GridState) -> float:
        return dlss_entropy_production(w, self.alpha)

    @property
    def analysis_backed(self) -> bool:
        return 1.0 < self.alpha < 4.0 / 3.0
