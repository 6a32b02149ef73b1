"""Shigesada-Kawasaki-Teramoto cross-diffusion system in one-leg form.

Species j evolves by

    du_j/dt = d^2/dx^2 ( d_j u_j + (a_j/2) u_j^2 + u_1 u_2 )

on the unit torus. The operator is discretized in this conservative form,
with the potential inside a periodic second difference, so the spatial part
of the residual telescopes to zero node-wise per species.

In entropy variables with w = (sigma(E)v)^{2/alpha} the residual at node i
(species 1, species 2 symmetric) is

    (2/alpha) sigma_i^{2/alpha - 1} (rho(E)v)_i - (tau/h^2) delta^2[P_1(w)]_i.

printed_exponents=True replaces the exponent 2/alpha by alpha/2, the printed
variant kept for comparison runs.
"""

from __future__ import annotations

from typing import Literal

import numpy as np
import scipy.sparse as sp
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field

from ..core.exceptions import GridMismatchError, ParameterError, PositivityError
from ..entropy.grid import GridState, History
from ..entropy.transform import apply_rho, apply_sigma
from ..schemes.coefficients import SchemeCoefficients
from .stencils import second_difference, second_difference_matrix

SktTest = Literal["A", "B"]


class SktParams(BaseModel):
    """Diffusion (d1, d2) and self-diffusion (a1, a2) coefficients.

    Cross-diffusion has unit strength.
    """

    model_config = ConfigDict(frozen=True)

    d1: float = Field(gt=0)
    d2: float = Field(gt=0)
    a1: float = Field(gt=0)
    a2: float = Field(gt=0)

    @property
    def entropy_condition_met(self) -> bool:
        """4 a1 a2 >= max(a1, a2) + 1, required by the dissipation estimate."""
        return 4.0 * self.a1 * self.a2 >= max(self.a1, self.a2) + 1.0

    @property
    def diffusion(self) -> tuple[float, float]:
        return (self.d1, self.d2)


TEST_PARAMS: dict[str, SktParams] = {
    "A": SktParams(d1=1.0, d2=1.0, a1=0.01, a2=0.01),
    "B": SktParams(d1=1.0, d2=1.0, a1=1.0, a2=1.0),
}


def _exponent(alpha: float, printed_exponents: bool) -> float:
    return alpha / 2.0 if printed_exponents else 2.0 / alpha


def _blend(
    hist: History, v_new: GridState, s: SchemeCoefficients
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    if v_new.n_species != 2:
        raise GridMismatchError(f"SKT needs two species, got {v_new.n_species}")
    sigma = apply_sigma(s, hist, v_new).values
    low = float(sigma.min())
    if not low > 0.0:
        raise PositivityError("sigma(E)v must be strictly positive", context={"min_sigma_v": low})
    return sigma, apply_rho(s, hist, v_new).values


def _potentials(w: NDArray[np.float64], par: SktParams) -> NDArray[np.float64]:
    w1, w2 = w
    cross = w1 * w2
    return np.stack(
        [
            par.d1 * w1 + 0.5 * par.a1 * w1**2 + cross,
            par.d2 * w2 + 0.5 * par.a2 * w2**2 + cross,
        ]
    )


def skt_residual(
    hist: History,
    v_new: GridState,
    s: SchemeCoefficients,
    par: SktParams,
    alpha: float,
    tau: float,
    printed_exponents: bool = False,
) -> NDArray[np.float64]:
    """Residual of one SKT step, species-major flat vector of length 2N.

    Raises:
        PositivityError: If sigma(E)v is not strictly positive.
        GridMismatchError: If the window or species count does not fit.
    """
    sigma, rho = _blend(hist, v_new, s)
    q = _exponent(alpha, printed_exponents)
    w = sigma**q
    time_term = (2.0 / alpha) * sigma ** (q - 1.0) * rho
    spatial = (tau * v_new.grid_n**2) * second_difference(_potentials(w, par))
    return (time_term - spatial).ravel()


def skt_spatial_part(w: GridState, par: SktParams, tau: float) -> NDArray[np.float64]:
    """(tau/h^2) delta^2 of the potentials, per species."""
    return (tau * w.grid_n**2) * second_difference(_potentials(w.values, par))


def skt_jacobian(
    hist: History,
    v_new: GridState,
    s: SchemeCoefficients,
    par: SktParams,
    alpha: float,
    tau: float,
    printed_exponents: bool = False,
) -> sp.csc_matrix:
    """Analytic Jacobian of skt_residual with respect to v_new (2N x 2N)."""
    sigma, rho = _blend(hist, v_new, s)
    q = _exponent(alpha, printed_exponents)
    n = v_new.grid_n
    a_p, b_p = s.alpha_p, s.beta_p

    w = sigma**q
    dw_dv = q * sigma ** (q - 1.0) * b_p
    time_diag = (2.0 / alpha) * ((q - 1.0) * sigma ** (q - 2.0) * b_p * rho + sigma ** (q - 1.0) * a_p)

    w1, w2 = w
    # dP_i/dw_j
    dp = (
        (par.d1 + par.a1 * w1 + w2, w1),
        (w2, par.d2 + par.a2 * w2 + w1),
    )
    d2 = second_difference_matrix(n)
    scale = tau * n**2
    blocks = [[-scale * (d2 @ sp.diags(dp[i][j] * dw_dv[j])) for j in range(2)] for i in range(2)]
    for i in range(2):
        blocks[i][i] = blocks[i][i] + sp.diags(time_diag[i])
    return sp.bmat(blocks, format="csc")


def skt_initial_data(test: SktTest, n: int) -> tuple[GridState, SktParams]:
    """Initial densities and coefficients of the two reference tests.

    u1(x, 0) = 2 e^{-x} sin(2 pi x) + 10, u2(x, 0) = -4 e^{-x} sin(2 pi x) + 10.
    Test A uses weak self-diffusion (a1 = a2 = 0.01), test B unit coefficients.
    """
    if n < 4:
        raise ParameterError(f"Grid needs at least 4 nodes, got {n}", context={"N": n})
    return skt_initial_densities(n), TEST_PARAMS[test]


def skt_initial_densities(n: int) -> GridState:
    x = np.arange(n) / n
    bump = np.exp(-x) * np.sin(2.0 * np.pi * x)
    return GridState(values=np.stack([2.0 * bump + 10.0, -4.0 * bump + 10.0]))
