"""Fourth-order quantum diffusion (DLSS) equation in one-leg form.

    u_t + (u (log u)_xx)_xx = 0   on the unit torus.

The strong form is discretized with the periodic second difference applied
twice, inner on log w and outer on w times that, giving a nonlinear stencil
coupling each node to its two neighbours on either side. The node sum of the
spatial part telescopes to zero.
"""

from __future__ import annotations

from collections.abc import Callable
from typing import Self

import numpy as np
import scipy.sparse as sp
from loguru import logger
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..core.exceptions import GridMismatchError, ParameterError, PositivityError
from ..entropy.grid import GridState, History
from ..entropy.transform import apply_rho, apply_sigma
from ..schemes.coefficients import SchemeCoefficients
from .stencils import second_difference

# Upper end of the analysis-backed entropy exponent range in one dimension
DLSS_ALPHA_MAX = 4.0 / 3.0

# Half-width of the stencil; columns of one colour are >= 2*BAND+1 apart
BAND = 2

FD_REL_STEP = 1e-6


class DlssConfig(BaseModel):
    """Entropy exponent and initial profile u0 = mean + amplitude sin(2 pi x).

    Attributes:
        alpha: Entropy exponent, 1 < alpha < 4/3 unless experimental
        experimental: Allow any alpha >= 1
        mean: Mean density of the initial profile
        amplitude: Amplitude of the initial sine mode, below the mean
    """

    model_config = ConfigDict(frozen=True)

    alpha: float
    experimental: bool = False
    mean: float = Field(default=1.0, gt=0)
    amplitude: float = Field(default=0.5, ge=0)

    @model_validator(mode="after")
    def validate_ranges(self) -> Self:
        """Admissible alpha and a strictly positive initial profile."""
        if self.experimental:
            if not self.alpha >= 1.0:
                raise ValueError(f"alpha must be >= 1, got {self.alpha}")
        elif not 1.0 < self.alpha < DLSS_ALPHA_MAX:
            raise ValueError(f"alpha must lie in (1, 4/3), got {self.alpha} (set experimental to relax)")
        if not self.amplitude < self.mean:
            raise ValueError(f"amplitude {self.amplitude} must be below mean {self.mean}")
        return self


def dlss_operator(w: NDArray[np.float64], h: float) -> NDArray[np.float64]:
    """(w (log w)_xx)_xx with nested periodic second differences."""
    return second_difference(w * second_difference(np.log(w))) / h**4


def _blend(
    hist: History, v_new: GridState, s: SchemeCoefficients
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    if v_new.n_species != 1:
        raise GridMismatchError(f"DLSS has one species, got {v_new.n_species}")
    sigma = apply_sigma(s, hist, v_new).values
    low = float(sigma.min())
    if not low > 0.0:
        raise PositivityError("sigma(E)v must be strictly positive", context={"min_sigma_v": low})
    return sigma, apply_rho(s, hist, v_new).values


def dlss_residual(
    hist: History, v_new: GridState, s: SchemeCoefficients, alpha: float, tau: float
) -> NDArray[np.float64]:
    """(2/alpha) sigma^{2/alpha - 1} rho(E)v + tau * operator(w), length N.

    Raises:
        PositivityError: If sigma(E)v is not strictly positive.
        GridMismatchError: If the window or species count does not fit.
    """
    sigma, rho = _blend(hist, v_new, s)
    q = 2.0 / alpha
    w = sigma**q
    return ((2.0 / alpha) * sigma ** (q - 1.0) * rho + tau * dlss_operator(w, v_new.grid_h)).ravel()


def colour_count(n: int) -> int:
    """Number of colours for cyclic pentadiagonal finite differencing on n nodes.

    Columns j and j' share colour j mod c; that is safe when every pair of
    same-coloured columns, wrap-around included, is at least 2*BAND+1 apart.
    Returns n when no smaller count works (one column per colour).
    """
    c = 2 * BAND + 1
    while c < n and n % c != 0 and n % c < 2 * BAND + 1:
        c += 1
    return min(c, n)


def banded_fd_jacobian(
    fn: Callable[[NDArray[np.float64]], NDArray[np.float64]], x: NDArray[np.float64]
) -> sp.csc_matrix:
    """Central-difference Jacobian of a cyclic pentadiagonal map by column colouring.

    Entries outside the band are exactly zero.
    """
    n = x.size
    colours = colour_count(n)
    steps = FD_REL_STEP * np.maximum(np.abs(x), 1.0)
    offsets = np.arange(-BAND, BAND + 1)

    rows: list[NDArray[np.int64]] = []
    cols: list[NDArray[np.int64]] = []
    vals: list[NDArray[np.float64]] = []
    for colour in range(colours):
        members = np.arange(colour, n, colours)
        e = np.zeros(n)
        e[members] = steps[members]
        diff = fn(x + e) - fn(x - e)
        for j in members:
            band_rows = np.unique((j + offsets) % n)
            rows.append(band_rows)
            cols.append(np.full(band_rows.size, j))
            vals.append(diff[band_rows] / (2.0 * steps[j]))

    logger.trace(f"Estimated {n}x{n} Jacobian with {colours} colours")
    return sp.csc_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(n, n),
    )


def dlss_jacobian(
    hist: History, v_new: GridState, s: SchemeCoefficients, alpha: float, tau: float
) -> sp.csc_matrix:
    """Coloured central-difference Jacobian of dlss_residual (N x N)."""
    # Evaluate once at the base point so positivity failures surface here
    _blend(hist, v_new, s)
    return banded_fd_jacobian(
        lambda x: dlss_residual(hist, GridState(values=x), s, alpha, tau),
        v_new.flat.copy(),
    )


def dlss_initial_data(n: int, config: DlssConfig) -> GridState:
    """Initial density u0 = mean + amplitude sin(2 pi x) on n nodes."""
    if n < 4:
        raise ParameterError(f"Grid needs at least 4 nodes, got {n}", context={"N": n})
    x = np.arange(n) / n
    return GridState(values=config.mean + config.amplitude * np.sin(2.0 * np.pi * x))
